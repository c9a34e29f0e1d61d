#ifndef CHP_AST_HPP
#define CHP_AST_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace chp {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

enum class Sort { Real, Int, Chan, Trace };

const char* sort_name(Sort s);

// The global-time variable; evolves with rate 1 in every ODE.
inline const std::string kGlobalTime = "mu";

struct Variable {
  std::string name;
  Sort sort = Sort::Real;

  bool is_global_time() const { return name == kGlobalTime; }
  auto operator<=>(const Variable&) const = default;
};

inline Variable global_time() { return Variable{kGlobalTime, Sort::Real}; }

// ---------------------------------------------------------------------------
// Terms (four-sorted: Real / Int / Chan / Trace)
// ---------------------------------------------------------------------------

enum class TermKind {
  // Real
  RVar,
  RConst,
  Add,
  Mul,
  ValAt,   // val(te[ie])
  TimeAt,  // time(te[ie])
  // Int
  IVar,
  IConst,
  IAdd,
  ISub,
  Len,
  // Chan
  ChanName,
  ChanAt,  // chan(te[ie])
  // Trace
  TVar,
  Eps,
  Item,  // <ch, value, timestamp>
  Cat,
  Proj,  // te | {c1, ..., cn}
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  Sort sort;
  Rational rat;                    // RConst
  Integer num;                     // IConst
  std::string name;                // RVar/IVar/TVar/ChanName and Item channel
  TermPtr a, b;                    // children
  std::vector<std::string> chans;  // Proj channel set, sorted & deduped

  Term(TermKind k, Sort s) : kind(k), sort(s) {}
};

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Builders; each checks child sorts and throws SortError on misuse.
TermPtr mk_rvar(const std::string& name);
TermPtr mk_rconst(const Rational& q);
TermPtr mk_add(TermPtr a, TermPtr b);
TermPtr mk_mul(TermPtr a, TermPtr b);
TermPtr mk_val_at(TermPtr trace, TermPtr index);
TermPtr mk_time_at(TermPtr trace, TermPtr index);
TermPtr mk_ivar(const std::string& name);
TermPtr mk_iconst(const Integer& n);
TermPtr mk_iadd(TermPtr a, TermPtr b);
TermPtr mk_isub(TermPtr a, TermPtr b);
TermPtr mk_len(TermPtr trace);
TermPtr mk_chan_name(const std::string& ch);
TermPtr mk_chan_at(TermPtr trace, TermPtr index);
TermPtr mk_tvar(const std::string& name);
TermPtr mk_eps();
TermPtr mk_item(const std::string& ch, TermPtr value, TermPtr stamp);
TermPtr mk_cat(TermPtr a, TermPtr b);
TermPtr mk_proj(TermPtr trace, std::vector<std::string> chans);

TermPtr mk_var(const Variable& v);

// Convenience arithmetic on real terms.
TermPtr mk_neg(TermPtr a);            // -a  ==  (-1) * a
TermPtr mk_sub(TermPtr a, TermPtr b); // a - b  ==  a + (-1) * b
// Last access: val(te) == val(te[len(te) - 1]); likewise time/chan.
TermPtr mk_val_last(TermPtr trace);
TermPtr mk_time_last(TermPtr trace);
TermPtr mk_chan_last(TermPtr trace);

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class ProgramKind {
  Assign,        // x := rho
  RandomAssign,  // x := *
  Ode,           // {x1' = rho1, ... & chi}
  Test,          // ? chi
  Seq,
  Choice,
  Star,
  Send,     // ch(h)!rho
  Receive,  // ch(h)?x
  Par,
};

struct Program;
using ProgramPtr = std::shared_ptr<const Program>;

struct OdeBinding {
  Variable var;  // real
  TermPtr rhs;   // polynomial over RVar
};

struct Program {
  ProgramKind kind;
  Variable var;                     // Assign/RandomAssign target, Receive target
  TermPtr term;                     // Assign rhs, Send payload
  std::vector<OdeBinding> bindings; // Ode
  FormulaPtr constraint;            // Ode domain constraint, Test condition
  ProgramPtr a, b;
  std::string channel;              // Send/Receive
  Variable recorder;                // Send/Receive trace recorder

  explicit Program(ProgramKind k) : kind(k) {}
};

ProgramPtr mk_assign(const Variable& x, TermPtr rho);
ProgramPtr mk_random_assign(const Variable& x);
// Throws SortError for duplicate bound variables or a mu-binding with rhs != 1.
ProgramPtr mk_ode(std::vector<OdeBinding> bindings, FormulaPtr constraint);
ProgramPtr mk_test(FormulaPtr chi);
ProgramPtr mk_seq(ProgramPtr a, ProgramPtr b);
ProgramPtr mk_choice(ProgramPtr a, ProgramPtr b);
ProgramPtr mk_star(ProgramPtr a);
ProgramPtr mk_send(const std::string& ch, const Variable& recorder, TermPtr rho);
ProgramPtr mk_receive(const std::string& ch, const Variable& recorder, const Variable& x);
ProgramPtr mk_par(ProgramPtr a, ProgramPtr b);
// if (phi) { a }  ==  (?phi; a) ++ ?!phi
ProgramPtr mk_if(FormulaPtr phi, ProgramPtr a);
ProgramPtr mk_skip();  // ? true

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

enum class FormulaKind {
  True,
  False,
  Eq,      // any sort, both sides equal sort
  Geq,     // Real/Real or Int/Int
  Prefix,  // te1 prefixof te2
  Not,
  And,
  Or,
  Implies,
  Forall,
  Exists,
  Box,    // [alpha] psi
  AcBox,  // [alpha]{A, C} psi
};

struct Formula {
  FormulaKind kind;
  TermPtr t1, t2;        // atoms
  FormulaPtr f1, f2;     // connectives; AcBox: f1 = A, f2 = C
  FormulaPtr body;       // quantifier/modal body
  Variable var;          // quantifier binder
  ProgramPtr prog;       // Box/AcBox

  explicit Formula(FormulaKind k) : kind(k) {}
};

FormulaPtr mk_true();
FormulaPtr mk_false();
FormulaPtr mk_eq(TermPtr a, TermPtr b);
FormulaPtr mk_geq(TermPtr a, TermPtr b);
FormulaPtr mk_prefix(TermPtr a, TermPtr b);
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_forall(const Variable& v, FormulaPtr body);
FormulaPtr mk_exists(const Variable& v, FormulaPtr body);
FormulaPtr mk_box(ProgramPtr alpha, FormulaPtr psi);
FormulaPtr mk_acbox(FormulaPtr assumption, FormulaPtr commitment, ProgramPtr alpha,
                    FormulaPtr psi);

// a <= b, a < b, a > b as Geq/Not-of-Geq combinations
FormulaPtr mk_leq(TermPtr a, TermPtr b);
FormulaPtr mk_lt(TermPtr a, TermPtr b);
FormulaPtr mk_gt(TermPtr a, TermPtr b);

// ---------------------------------------------------------------------------
// Structural equality and hashing
// ---------------------------------------------------------------------------

bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const ProgramPtr& a, const ProgramPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

size_t hash_of(const TermPtr& t);
size_t hash_of(const ProgramPtr& p);
size_t hash_of(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

struct Declarations {
  std::set<Variable> vars;       // declared variables (mu implicit)
  std::set<std::string> chans;   // declared channel names

  bool has_var(const std::string& name) const;
  std::optional<Variable> lookup(const std::string& name) const;
  void declare(const Variable& v);
  void declare_chan(const std::string& ch);
  std::set<std::string> all_names() const;
};

}  // namespace chp

#endif
