#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaugequad/calculus.hpp"
#include "gaugequad/integrator.hpp"

namespace gaugequad::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kNegative = 2;  // DIVERGED, FAILS, FAIL
inline constexpr int kInconclusive = 3;

// Prefix protecting arguments that start with "-inf" from option parsing.
inline constexpr char kNegativeMark = '@';
std::string unmark(std::string s);

struct Globals {
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  std::optional<double> tol;
  int max_refinements = 24;
  int max_depth = kDefaultMaxDepth;
  std::uint64_t seed = 0;
  std::string gauge;
  std::vector<double> singular;
  double sharpness = 1e-2;
  bool json = false;
  bool trace = false;
  bool timing = false;

  IntegratorConfig config() const;
};

struct Span {
  std::string lo;
  std::string hi;
};

int cmd_integrate(const Globals& g, const std::string& text, const std::string& var,
                  const Span& span, bool improper, const std::string& end);
int cmd_ftc(const Globals& g, const std::string& text, const std::string& var, const Span& span,
            const std::string& fprime, int grid, const std::vector<double>& kinks);
int cmd_dui(const Globals& g, const std::string& text, const std::string& x,
            const std::string& y, const Span& xs, const Span& ys, const std::string& f1,
            const std::vector<std::string>& windows, const std::vector<double>& at,
            const std::string& preset);
int cmd_interchange(const Globals& g, const std::string& text, const std::string& x,
                    const std::string& y, const Span& xs, const Span& ys,
                    const std::vector<std::string>& windows, const std::vector<double>& at);
int cmd_series(const Globals& g, const std::string& text, const std::string& n,
               const std::string& x, const Span& span, int n_max,
               const std::vector<std::string>& windows, const std::vector<double>& at);
int cmd_partition(const Globals& g, const Span& span);
int cmd_corpus_list(const Globals& g);
int cmd_corpus_run(const Globals& g, const std::vector<std::string>& names, bool all,
                   bool tol_given, bool seed_given);

}  // namespace gaugequad::cli
