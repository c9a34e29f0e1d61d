#ifndef CHP_PARSER_HPP
#define CHP_PARSER_HPP

#include <map>
#include <string>
#include <variant>

#include "chp/ast.hpp"

namespace chp {

struct ParseError : std::runtime_error {
  int line = 0, col = 0;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

// Named abbreviations from `let` bindings in a source file.
struct LetEnv {
  std::map<std::string, TermPtr> terms;
  std::map<std::string, FormulaPtr> formulas;
  std::map<std::string, ProgramPtr> programs;
};

// A parsed .dlchp problem file: declarations preamble, lets, goal formula.
struct Problem {
  Declarations decls;
  LetEnv lets;
  FormulaPtr goal;
};

// A parsed .chp program file.
struct ProgramFile {
  Declarations decls;
  LetEnv lets;
  ProgramPtr program;
};

// Standalone entry points; `decls` must already declare every identifier.
ProgramPtr parse_program(const std::string& text, const Declarations& decls);
FormulaPtr parse_formula(const std::string& text, const Declarations& decls);
TermPtr parse_term(const std::string& text, const Declarations& decls);

ProgramPtr parse_program(const std::string& text, const Declarations& decls,
                         const LetEnv& lets);
FormulaPtr parse_formula(const std::string& text, const Declarations& decls,
                         const LetEnv& lets);
TermPtr parse_term(const std::string& text, const Declarations& decls,
                   const LetEnv& lets);

Problem parse_problem_file(const std::string& text);
ProgramFile parse_program_file(const std::string& text);

}  // namespace chp

#endif
