#include "gtt/machine.hpp"

#include <cassert>

#include "gtt/typecheck.hpp"

namespace gtt {

std::string result_str(const Result& r) {
  switch (r.kind) {
    case ResultKind::Timeout: return "timeout";
    case ResultKind::Error: return "error";
    case ResultKind::RetTrue: return "true";
    case ResultKind::RetFalse: return "false";
  }
  return "?";
}

bool result_leq(const Result& r1, const Result& r2) {
  return r1.kind == ResultKind::Error || r1.kind == r2.kind;
}

namespace {

struct Frame {
  enum Kind { BindF, AppF, FstF, SndF, UnrollF } kind;
  std::string x;  // BindF
  TermPtr body;   // BindF continuation
  TermPtr arg;    // AppF argument
};

struct Machine {
  TermPtr head;
  std::vector<Frame> frames;
  bool star_mode = false;

  explicit Machine(TermPtr m, bool star) : head(std::move(m)), star_mode(star) {}

  [[noreturn]] void stuck(const char* what) const {
    fail(head->loc, "E_STUCK", std::string("machine stuck at ") + what +
                                   " (progress violated): " + print_term(head));
  }

  // big-step evaluation of a closed complex value to an operational value
  // (CBPV* oracle mode only; total on well-typed closed values)
  TermPtr value_eval(const TermPtr& v) const {
    switch (v->tag) {
      case TermTag::UnitV:
      case TermTag::Thunk:
        return v;
      case TermTag::Inl: {
        TermPtr w = value_eval(v->t1);
        return w.get() == v->t1.get() ? v : mk_inl(w, v->ty1);
      }
      case TermTag::Inr: {
        TermPtr w = value_eval(v->t1);
        return w.get() == v->t1.get() ? v : mk_inr(w, v->ty1);
      }
      case TermTag::PairV: {
        TermPtr a = value_eval(v->t1), b = value_eval(v->t2);
        return a.get() == v->t1.get() && b.get() == v->t2.get() ? v : mk_pair(a, b);
      }
      case TermTag::RollMu: {
        TermPtr w = value_eval(v->t1);
        return w.get() == v->t1.get() ? v : mk_rollmu(v->ty1, w);
      }
      case TermTag::Case: {
        TermPtr s = value_eval(v->t1);
        if (s->tag == TermTag::Inl) return value_eval(subst_value(v->t2, v->x, s->t1));
        if (s->tag == TermTag::Inr) return value_eval(subst_value(v->t3, v->y, s->t1));
        fail(v->loc, "E_STUCK", "complex-value case on a non-injection");
      }
      case TermTag::UnitSplit: {
        TermPtr s = value_eval(v->t1);
        if (s->tag != TermTag::UnitV)
          fail(v->loc, "E_STUCK", "complex-value usplit on a non-unit");
        return value_eval(v->t2);
      }
      case TermTag::Split: {
        TermPtr s = value_eval(v->t1);
        if (s->tag != TermTag::PairV)
          fail(v->loc, "E_STUCK", "complex-value split on a non-pair");
        return value_eval(
            subst_value(subst_value(v->t2, v->x, s->t1), v->y, s->t2));
      }
      case TermTag::UnrollMu: {
        TermPtr s = value_eval(v->t1);
        if (s->tag != TermTag::RollMu)
          fail(v->loc, "E_STUCK", "complex-value pmroll on a non-roll");
        return value_eval(subst_value(v->t2, v->x, s->t1));
      }
      default:
        fail(v->loc, "E_STUCK", "unexpected form in complex-value evaluation: " +
                                    print_term(v));
    }
  }

  TermPtr want_value(const TermPtr& v) const {
    if (star_mode) return value_eval(v);
    return v;
  }

  // descend through elimination frames until the head is not an elimination
  void descend() {
    for (;;) {
      switch (head->tag) {
        case TermTag::Bind:
          frames.push_back({Frame::BindF, head->x, head->t2, nullptr});
          head = head->t1;
          break;
        case TermTag::App:
          frames.push_back({Frame::AppF, {}, nullptr, head->t2});
          head = head->t1;
          break;
        case TermTag::Fst:
          frames.push_back({Frame::FstF, {}, nullptr, nullptr});
          head = head->t1;
          break;
        case TermTag::Snd:
          frames.push_back({Frame::SndF, {}, nullptr, nullptr});
          head = head->t1;
          break;
        case TermTag::UnrollNu:
          frames.push_back({Frame::UnrollF, {}, nullptr, nullptr});
          head = head->t1;
          break;
        default:
          return;
      }
    }
  }

  // one step; returns terminal result if the program is done
  std::optional<Result> step_once(int& cost) {
    cost = 0;
    descend();
    switch (head->tag) {
      case TermTag::Err:
        if (frames.empty()) return Result{ResultKind::Error};
        frames.clear();  // S[err] -> err
        return std::nullopt;
      case TermTag::RetV: {
        if (frames.empty()) {
          TermPtr v = want_value(head->t1);
          if (v->tag == TermTag::Inl) return Result{ResultKind::RetTrue};
          if (v->tag == TermTag::Inr) return Result{ResultKind::RetFalse};
          stuck("ret of a non-boolean at top level");
        }
        Frame f = frames.back();
        if (f.kind != Frame::BindF) stuck("ret under a non-bind frame");
        frames.pop_back();
        head = subst_value(f.body, f.x, want_value(head->t1));
        return std::nullopt;
      }
      case TermTag::Lam: {
        if (frames.empty() || frames.back().kind != Frame::AppF)
          stuck("lambda without an application frame");
        Frame f = frames.back();
        frames.pop_back();
        head = subst_value(head->t1, head->x, want_value(f.arg));
        return std::nullopt;
      }
      case TermTag::WithPair: {
        if (frames.empty()) stuck("with-pair at top level");
        Frame f = frames.back();
        if (f.kind == Frame::FstF) {
          frames.pop_back();
          head = head->t1;
        } else if (f.kind == Frame::SndF) {
          frames.pop_back();
          head = head->t2;
        } else {
          stuck("with-pair under a non-projection frame");
        }
        return std::nullopt;
      }
      case TermTag::RollNu: {
        if (frames.empty() || frames.back().kind != Frame::UnrollF)
          stuck("rollnu without an unroll frame");
        frames.pop_back();
        head = head->t1;
        cost = 1;
        return std::nullopt;
      }
      case TermTag::Force: {
        TermPtr v = want_value(head->t1);
        if (v->tag != TermTag::Thunk) stuck("force of a non-thunk");
        head = v->t1;
        return std::nullopt;
      }
      case TermTag::Case: {
        TermPtr v = want_value(head->t1);
        if (v->tag == TermTag::Inl)
          head = subst_value(head->t2, head->x, v->t1);
        else if (v->tag == TermTag::Inr)
          head = subst_value(head->t3, head->y, v->t1);
        else
          stuck("case of a non-injection");
        return std::nullopt;
      }
      case TermTag::UnitSplit: {
        TermPtr v = want_value(head->t1);
        if (v->tag != TermTag::UnitV) stuck("usplit of a non-unit");
        head = head->t2;
        return std::nullopt;
      }
      case TermTag::Split: {
        TermPtr v = want_value(head->t1);
        if (v->tag != TermTag::PairV) stuck("split of a non-pair");
        head = subst_value(subst_value(head->t2, head->x, v->t1), head->y, v->t2);
        return std::nullopt;
      }
      case TermTag::UnrollMu: {
        TermPtr v = want_value(head->t1);
        if (v->tag != TermTag::RollMu) stuck("pmroll of a non-roll");
        head = subst_value(head->t2, head->x, v->t1);
        cost = 1;
        return std::nullopt;
      }
      case TermTag::Abort:
        stuck("abort (no closed value of type 0 exists)");
      case TermTag::EmptyPair:
        stuck("emptypair in evaluation position");
      default:
        stuck("non-computation head");
    }
  }

  // reassemble the whole term from head and frames
  TermPtr reassemble() const {
    TermPtr m = head;
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      switch (it->kind) {
        case Frame::BindF: m = mk_bind(it->x, m, it->body); break;
        case Frame::AppF: m = mk_app(m, it->arg); break;
        case Frame::FstF: m = mk_fst(m); break;
        case Frame::SndF: m = mk_snd(m); break;
        case Frame::UnrollF: m = mk_unrollnu(m); break;
      }
    }
    return m;
  }
};

}  // namespace

StepOutcome step(const TermPtr& m) {
  Machine machine(m, false);
  int cost = 0;
  auto r = machine.step_once(cost);
  if (r) return {true, *r, nullptr, cost};
  return {false, Result{ResultKind::Error}, machine.reassemble(), cost};
}

EvalStats eval(const TermPtr& m, const EvalOptions& opts) {
  Machine machine(m, opts.star_mode);
  EvalStats stats{Result{ResultKind::Timeout}, 0, 0};
  Stage stage = opts.star_mode ? Stage::CBPVStar : Stage::CBPVOp;
  TypePtr ty0;
  if (opts.check_types) ty0 = infer_comp(TypeEnv{}, m, stage);
  while (stats.steps < opts.fuel) {
    int cost = 0;
    auto r = machine.step_once(cost);
    stats.steps++;
    stats.cost1_steps += static_cast<uint64_t>(cost);
    if (r) {
      stats.result = *r;
      return stats;
    }
    if (opts.check_types) {
      TypePtr ty = infer_comp(TypeEnv{}, machine.reassemble(), stage);
      if (!type_equal(ty, ty0))
        fail(m->loc, "E_SUBJECT",
             "subject reduction violated: " + print_type(ty0) + " became " +
                 print_type(ty));
    }
  }
  stats.result = Result{ResultKind::Timeout};
  return stats;
}

EvalStats eval(const TermPtr& m, uint64_t fuel) {
  EvalOptions o;
  o.fuel = fuel;
  return eval(m, o);
}

EvalStats eval_star(const TermPtr& m, uint64_t fuel) {
  EvalOptions o;
  o.fuel = fuel;
  o.star_mode = true;
  return eval(m, o);
}

}  // namespace gtt
