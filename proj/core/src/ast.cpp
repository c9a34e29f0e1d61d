#include "chp/ast.hpp"

#include <algorithm>
#include <functional>

namespace chp {

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::Real: return "R";
    case Sort::Int: return "Z";
    case Sort::Chan: return "C";
    case Sort::Trace: return "T";
  }
  return "?";
}

namespace {

TermPtr node(TermKind k, Sort s) { return std::make_shared<Term>(k, s); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw SortError(msg);
}

void require_sort(const TermPtr& t, Sort s, const char* where) {
  require(t && t->sort == s,
          std::string(where) + ": expected sort " + sort_name(s));
}

}  // namespace

TermPtr mk_rvar(const std::string& name) {
  auto t = std::make_shared<Term>(TermKind::RVar, Sort::Real);
  t->name = name;
  return t;
}

TermPtr mk_rconst(const Rational& q) {
  auto t = std::make_shared<Term>(TermKind::RConst, Sort::Real);
  t->rat = q;
  return t;
}

TermPtr mk_add(TermPtr a, TermPtr b) {
  require_sort(a, Sort::Real, "+");
  require_sort(b, Sort::Real, "+");
  auto t = node(TermKind::Add, Sort::Real);
  auto m = std::make_shared<Term>(TermKind::Add, Sort::Real);
  m->a = a;
  m->b = b;
  return m;
}

TermPtr mk_mul(TermPtr a, TermPtr b) {
  require_sort(a, Sort::Real, "*");
  require_sort(b, Sort::Real, "*");
  auto m = std::make_shared<Term>(TermKind::Mul, Sort::Real);
  m->a = a;
  m->b = b;
  return m;
}

TermPtr mk_val_at(TermPtr trace, TermPtr index) {
  require_sort(trace, Sort::Trace, "val");
  require_sort(index, Sort::Int, "val index");
  auto m = std::make_shared<Term>(TermKind::ValAt, Sort::Real);
  m->a = trace;
  m->b = index;
  return m;
}

TermPtr mk_time_at(TermPtr trace, TermPtr index) {
  require_sort(trace, Sort::Trace, "time");
  require_sort(index, Sort::Int, "time index");
  auto m = std::make_shared<Term>(TermKind::TimeAt, Sort::Real);
  m->a = trace;
  m->b = index;
  return m;
}

TermPtr mk_ivar(const std::string& name) {
  auto t = std::make_shared<Term>(TermKind::IVar, Sort::Int);
  t->name = name;
  return t;
}

TermPtr mk_iconst(const Integer& n) {
  auto t = std::make_shared<Term>(TermKind::IConst, Sort::Int);
  t->num = n;
  return t;
}

TermPtr mk_iadd(TermPtr a, TermPtr b) {
  require_sort(a, Sort::Int, "+");
  require_sort(b, Sort::Int, "+");
  auto m = std::make_shared<Term>(TermKind::IAdd, Sort::Int);
  m->a = a;
  m->b = b;
  return m;
}

TermPtr mk_isub(TermPtr a, TermPtr b) {
  require_sort(a, Sort::Int, "-");
  require_sort(b, Sort::Int, "-");
  auto m = std::make_shared<Term>(TermKind::ISub, Sort::Int);
  m->a = a;
  m->b = b;
  return m;
}

TermPtr mk_len(TermPtr trace) {
  require_sort(trace, Sort::Trace, "len");
  auto m = std::make_shared<Term>(TermKind::Len, Sort::Int);
  m->a = trace;
  return m;
}

TermPtr mk_chan_name(const std::string& ch) {
  auto t = std::make_shared<Term>(TermKind::ChanName, Sort::Chan);
  t->name = ch;
  return t;
}

TermPtr mk_chan_at(TermPtr trace, TermPtr index) {
  require_sort(trace, Sort::Trace, "chan");
  require_sort(index, Sort::Int, "chan index");
  auto m = std::make_shared<Term>(TermKind::ChanAt, Sort::Chan);
  m->a = trace;
  m->b = index;
  return m;
}

TermPtr mk_tvar(const std::string& name) {
  auto t = std::make_shared<Term>(TermKind::TVar, Sort::Trace);
  t->name = name;
  return t;
}

TermPtr mk_eps() { return std::make_shared<Term>(TermKind::Eps, Sort::Trace); }

TermPtr mk_item(const std::string& ch, TermPtr value, TermPtr stamp) {
  require_sort(value, Sort::Real, "item value");
  require_sort(stamp, Sort::Real, "item timestamp");
  auto m = std::make_shared<Term>(TermKind::Item, Sort::Trace);
  m->name = ch;
  m->a = value;
  m->b = stamp;
  return m;
}

TermPtr mk_cat(TermPtr a, TermPtr b) {
  require_sort(a, Sort::Trace, "trace concat");
  require_sort(b, Sort::Trace, "trace concat");
  auto m = std::make_shared<Term>(TermKind::Cat, Sort::Trace);
  m->a = a;
  m->b = b;
  return m;
}

TermPtr mk_proj(TermPtr trace, std::vector<std::string> chans) {
  require_sort(trace, Sort::Trace, "projection");
  std::sort(chans.begin(), chans.end());
  chans.erase(std::unique(chans.begin(), chans.end()), chans.end());
  auto m = std::make_shared<Term>(TermKind::Proj, Sort::Trace);
  m->a = trace;
  m->chans = std::move(chans);
  return m;
}

TermPtr mk_var(const Variable& v) {
  switch (v.sort) {
    case Sort::Real: return mk_rvar(v.name);
    case Sort::Int: return mk_ivar(v.name);
    case Sort::Trace: return mk_tvar(v.name);
    case Sort::Chan: throw SortError("channel variables do not exist");
  }
  throw SortError("bad variable sort");
}

TermPtr mk_neg(TermPtr a) { return mk_mul(mk_rconst(Rational(-1)), a); }
TermPtr mk_sub(TermPtr a, TermPtr b) { return mk_add(a, mk_neg(b)); }

TermPtr mk_val_last(TermPtr trace) {
  return mk_val_at(trace, mk_isub(mk_len(trace), mk_iconst(1)));
}
TermPtr mk_time_last(TermPtr trace) {
  return mk_time_at(trace, mk_isub(mk_len(trace), mk_iconst(1)));
}
TermPtr mk_chan_last(TermPtr trace) {
  return mk_chan_at(trace, mk_isub(mk_len(trace), mk_iconst(1)));
}

// --- Programs ---------------------------------------------------------------

ProgramPtr mk_assign(const Variable& x, TermPtr rho) {
  require(x.sort == Sort::Real, "assignment target must be a real variable");
  require_sort(rho, Sort::Real, ":=");
  auto p = std::make_shared<Program>(ProgramKind::Assign);
  p->var = x;
  p->term = rho;
  return p;
}

ProgramPtr mk_random_assign(const Variable& x) {
  require(x.sort == Sort::Real, "random assignment target must be a real variable");
  auto p = std::make_shared<Program>(ProgramKind::RandomAssign);
  p->var = x;
  return p;
}

ProgramPtr mk_ode(std::vector<OdeBinding> bindings, FormulaPtr constraint) {
  require(!bindings.empty(), "empty ODE");
  for (size_t i = 0; i < bindings.size(); ++i) {
    const auto& bind = bindings[i];
    require(bind.var.sort == Sort::Real, "ODE binds real variables only");
    require_sort(bind.rhs, Sort::Real, "ODE right-hand side");
    for (size_t j = i + 1; j < bindings.size(); ++j)
      require(!(bindings[j].var == bind.var),
              "ill-formed ODE: duplicate binding for " + bind.var.name);
    if (bind.var.is_global_time()) {
      bool is_one = bind.rhs->kind == TermKind::RConst && bind.rhs->rat == 1;
      require(is_one, "ill-formed ODE: mu' must be 1");
    }
  }
  auto p = std::make_shared<Program>(ProgramKind::Ode);
  p->bindings = std::move(bindings);
  p->constraint = constraint ? constraint : mk_true();
  return p;
}

ProgramPtr mk_test(FormulaPtr chi) {
  auto p = std::make_shared<Program>(ProgramKind::Test);
  p->constraint = chi;
  return p;
}

ProgramPtr mk_seq(ProgramPtr a, ProgramPtr b) {
  auto p = std::make_shared<Program>(ProgramKind::Seq);
  p->a = a;
  p->b = b;
  return p;
}

ProgramPtr mk_choice(ProgramPtr a, ProgramPtr b) {
  auto p = std::make_shared<Program>(ProgramKind::Choice);
  p->a = a;
  p->b = b;
  return p;
}

ProgramPtr mk_star(ProgramPtr a) {
  auto p = std::make_shared<Program>(ProgramKind::Star);
  p->a = a;
  return p;
}

ProgramPtr mk_send(const std::string& ch, const Variable& recorder, TermPtr rho) {
  require(recorder.sort == Sort::Trace, "recorder must be a trace variable");
  require_sort(rho, Sort::Real, "send payload");
  auto p = std::make_shared<Program>(ProgramKind::Send);
  p->channel = ch;
  p->recorder = recorder;
  p->term = rho;
  return p;
}

ProgramPtr mk_receive(const std::string& ch, const Variable& recorder,
                      const Variable& x) {
  require(recorder.sort == Sort::Trace, "recorder must be a trace variable");
  require(x.sort == Sort::Real, "receive target must be a real variable");
  auto p = std::make_shared<Program>(ProgramKind::Receive);
  p->channel = ch;
  p->recorder = recorder;
  p->var = x;
  return p;
}

ProgramPtr mk_par(ProgramPtr a, ProgramPtr b) {
  auto p = std::make_shared<Program>(ProgramKind::Par);
  p->a = a;
  p->b = b;
  return p;
}

ProgramPtr mk_if(FormulaPtr phi, ProgramPtr a) {
  return mk_choice(mk_seq(mk_test(phi), a), mk_test(mk_not(phi)));
}

ProgramPtr mk_skip() { return mk_test(mk_true()); }

// --- Formulas ---------------------------------------------------------------

FormulaPtr mk_true() {
  static FormulaPtr t = std::make_shared<Formula>(FormulaKind::True);
  return t;
}

FormulaPtr mk_false() {
  static FormulaPtr f = std::make_shared<Formula>(FormulaKind::False);
  return f;
}

FormulaPtr mk_eq(TermPtr a, TermPtr b) {
  require(a && b && a->sort == b->sort, "= compares terms of equal sort");
  auto f = std::make_shared<Formula>(FormulaKind::Eq);
  f->t1 = a;
  f->t2 = b;
  return f;
}

FormulaPtr mk_geq(TermPtr a, TermPtr b) {
  require(a && b && a->sort == b->sort, ">= compares terms of equal sort");
  require(a->sort == Sort::Real || a->sort == Sort::Int,
          ">= is defined on real and integer terms only");
  auto f = std::make_shared<Formula>(FormulaKind::Geq);
  f->t1 = a;
  f->t2 = b;
  return f;
}

FormulaPtr mk_prefix(TermPtr a, TermPtr b) {
  require_sort(a, Sort::Trace, "prefixof");
  require_sort(b, Sort::Trace, "prefixof");
  auto f = std::make_shared<Formula>(FormulaKind::Prefix);
  f->t1 = a;
  f->t2 = b;
  return f;
}

FormulaPtr mk_not(FormulaPtr g) {
  auto f = std::make_shared<Formula>(FormulaKind::Not);
  f->f1 = g;
  return f;
}

FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>(FormulaKind::And);
  f->f1 = a;
  f->f2 = b;
  return f;
}

FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>(FormulaKind::Or);
  f->f1 = a;
  f->f2 = b;
  return f;
}

FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>(FormulaKind::Implies);
  f->f1 = a;
  f->f2 = b;
  return f;
}

FormulaPtr mk_forall(const Variable& v, FormulaPtr body) {
  require(v.sort != Sort::Chan, "cannot quantify over channels");
  auto f = std::make_shared<Formula>(FormulaKind::Forall);
  f->var = v;
  f->body = body;
  return f;
}

FormulaPtr mk_exists(const Variable& v, FormulaPtr body) {
  require(v.sort != Sort::Chan, "cannot quantify over channels");
  auto f = std::make_shared<Formula>(FormulaKind::Exists);
  f->var = v;
  f->body = body;
  return f;
}

FormulaPtr mk_box(ProgramPtr alpha, FormulaPtr psi) {
  auto f = std::make_shared<Formula>(FormulaKind::Box);
  f->prog = alpha;
  f->body = psi;
  return f;
}

FormulaPtr mk_acbox(FormulaPtr assumption, FormulaPtr commitment, ProgramPtr alpha,
                    FormulaPtr psi) {
  auto f = std::make_shared<Formula>(FormulaKind::AcBox);
  f->f1 = assumption;
  f->f2 = commitment;
  f->prog = alpha;
  f->body = psi;
  return f;
}

FormulaPtr mk_leq(TermPtr a, TermPtr b) { return mk_geq(b, a); }
FormulaPtr mk_lt(TermPtr a, TermPtr b) { return mk_not(mk_geq(a, b)); }
FormulaPtr mk_gt(TermPtr a, TermPtr b) { return mk_not(mk_geq(b, a)); }

// --- Structural equality ----------------------------------------------------

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::RVar:
    case TermKind::IVar:
    case TermKind::TVar:
    case TermKind::ChanName:
      return a->name == b->name;
    case TermKind::RConst: return a->rat == b->rat;
    case TermKind::IConst: return a->num == b->num;
    case TermKind::Eps: return true;
    case TermKind::Len: return equal(a->a, b->a);
    case TermKind::Item:
      return a->name == b->name && equal(a->a, b->a) && equal(a->b, b->b);
    case TermKind::Proj:
      return a->chans == b->chans && equal(a->a, b->a);
    default:
      return equal(a->a, b->a) && equal(a->b, b->b);
  }
}

bool equal(const ProgramPtr& a, const ProgramPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ProgramKind::Assign:
      return a->var == b->var && equal(a->term, b->term);
    case ProgramKind::RandomAssign: return a->var == b->var;
    case ProgramKind::Ode: {
      if (a->bindings.size() != b->bindings.size()) return false;
      for (size_t i = 0; i < a->bindings.size(); ++i) {
        if (!(a->bindings[i].var == b->bindings[i].var)) return false;
        if (!equal(a->bindings[i].rhs, b->bindings[i].rhs)) return false;
      }
      return equal(a->constraint, b->constraint);
    }
    case ProgramKind::Test: return equal(a->constraint, b->constraint);
    case ProgramKind::Star: return equal(a->a, b->a);
    case ProgramKind::Send:
      return a->channel == b->channel && a->recorder == b->recorder &&
             equal(a->term, b->term);
    case ProgramKind::Receive:
      return a->channel == b->channel && a->recorder == b->recorder &&
             a->var == b->var;
    default:
      return equal(a->a, b->a) && equal(a->b, b->b);
  }
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::True:
    case FormulaKind::False:
      return true;
    case FormulaKind::Eq:
    case FormulaKind::Geq:
    case FormulaKind::Prefix:
      return equal(a->t1, b->t1) && equal(a->t2, b->t2);
    case FormulaKind::Not: return equal(a->f1, b->f1);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return equal(a->f1, b->f1) && equal(a->f2, b->f2);
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return a->var == b->var && equal(a->body, b->body);
    case FormulaKind::Box:
      return equal(a->prog, b->prog) && equal(a->body, b->body);
    case FormulaKind::AcBox:
      return equal(a->f1, b->f1) && equal(a->f2, b->f2) &&
             equal(a->prog, b->prog) && equal(a->body, b->body);
  }
  return false;
}

// --- Hashing ----------------------------------------------------------------

namespace {
inline size_t mix(size_t h, size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
size_t hash_str(const std::string& s) { return std::hash<std::string>{}(s); }
}  // namespace

size_t hash_of(const TermPtr& t) {
  if (!t) return 0;
  size_t h = static_cast<size_t>(t->kind) * 31 + 7;
  switch (t->kind) {
    case TermKind::RVar:
    case TermKind::IVar:
    case TermKind::TVar:
    case TermKind::ChanName:
      return mix(h, hash_str(t->name));
    case TermKind::RConst:
      return mix(h, hash_str(t->rat.str()));
    case TermKind::IConst:
      return mix(h, hash_str(t->num.str()));
    case TermKind::Eps: return h;
    case TermKind::Item:
      h = mix(h, hash_str(t->name));
      h = mix(h, hash_of(t->a));
      return mix(h, hash_of(t->b));
    case TermKind::Proj: {
      for (const auto& c : t->chans) h = mix(h, hash_str(c));
      return mix(h, hash_of(t->a));
    }
    default:
      h = mix(h, hash_of(t->a));
      return mix(h, hash_of(t->b));
  }
}

size_t hash_of(const ProgramPtr& p) {
  if (!p) return 0;
  size_t h = static_cast<size_t>(p->kind) * 131 + 13;
  switch (p->kind) {
    case ProgramKind::Assign:
      h = mix(h, hash_str(p->var.name));
      return mix(h, hash_of(p->term));
    case ProgramKind::RandomAssign: return mix(h, hash_str(p->var.name));
    case ProgramKind::Ode: {
      for (const auto& bind : p->bindings) {
        h = mix(h, hash_str(bind.var.name));
        h = mix(h, hash_of(bind.rhs));
      }
      return mix(h, hash_of(p->constraint));
    }
    case ProgramKind::Test: return mix(h, hash_of(p->constraint));
    case ProgramKind::Star: return mix(h, hash_of(p->a));
    case ProgramKind::Send:
      h = mix(h, hash_str(p->channel));
      h = mix(h, hash_str(p->recorder.name));
      return mix(h, hash_of(p->term));
    case ProgramKind::Receive:
      h = mix(h, hash_str(p->channel));
      h = mix(h, hash_str(p->recorder.name));
      return mix(h, hash_str(p->var.name));
    default:
      h = mix(h, hash_of(p->a));
      return mix(h, hash_of(p->b));
  }
}

size_t hash_of(const FormulaPtr& f) {
  if (!f) return 0;
  size_t h = static_cast<size_t>(f->kind) * 257 + 101;
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::False:
      return h;
    case FormulaKind::Eq:
    case FormulaKind::Geq:
    case FormulaKind::Prefix:
      h = mix(h, hash_of(f->t1));
      return mix(h, hash_of(f->t2));
    case FormulaKind::Not: return mix(h, hash_of(f->f1));
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      h = mix(h, hash_of(f->f1));
      return mix(h, hash_of(f->f2));
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      h = mix(h, hash_str(f->var.name));
      return mix(h, hash_of(f->body));
    case FormulaKind::Box:
      h = mix(h, hash_of(f->prog));
      return mix(h, hash_of(f->body));
    case FormulaKind::AcBox:
      h = mix(h, hash_of(f->f1));
      h = mix(h, hash_of(f->f2));
      h = mix(h, hash_of(f->prog));
      return mix(h, hash_of(f->body));
  }
  return h;
}

// --- Declarations -----------------------------------------------------------

bool Declarations::has_var(const std::string& name) const {
  return lookup(name).has_value();
}

std::optional<Variable> Declarations::lookup(const std::string& name) const {
  if (name == kGlobalTime) return global_time();
  for (const auto& v : vars)
    if (v.name == name) return v;
  return std::nullopt;
}

void Declarations::declare(const Variable& v) {
  if (v.name == kGlobalTime) throw SortError("mu is reserved");
  if (auto prev = lookup(v.name); prev && !(*prev == v))
    throw SortError("conflicting declaration for " + v.name);
  vars.insert(v);
}

void Declarations::declare_chan(const std::string& ch) { chans.insert(ch); }

std::set<std::string> Declarations::all_names() const {
  std::set<std::string> out;
  for (const auto& v : vars) out.insert(v.name);
  for (const auto& c : chans) out.insert(c);
  out.insert(kGlobalTime);
  return out;
}

}  // namespace chp
