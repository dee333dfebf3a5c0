#ifndef TORFLAT_PIPELINE_HPP
#define TORFLAT_PIPELINE_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "jacobian.hpp"
#include "problem.hpp"
#include "report.hpp"
#include "unfolding.hpp"
#include "verify.hpp"

namespace torflat {

enum ExitCode : int { exit_pass = 0, exit_verification_failed = 1, exit_input_error = 2 };

struct CommandOptions {
  std::optional<std::size_t> order;
  bool allow_non_cy = false;
  std::optional<CheckSet> checks;
};

struct CommandResult {
  std::string text;
  int exit_code = exit_pass;
};

namespace detail {

template <typename F>
CommandResult guarded(F &&body) {
  try {
    return body();
  } catch (const TorsionClassGroup &e) {
    return {std::string("error: ") + e.what() +
                "\nthe class group has torsion, so the Cox ring grading is not free; only "
                "toric varieties with torsion-free class group are supported\n",
            exit_input_error};
  } catch (const Error &e) {
    return {std::string("error: ") + e.what() + '\n', exit_input_error};
  } catch (const std::invalid_argument &e) {
    return {std::string("error: ") + e.what() + '\n', exit_input_error};
  }
}

} // namespace detail

inline CommandResult cmd_grading(std::string_view problem_text, const CommandOptions & = {}) {
  return detail::guarded([&]() -> CommandResult {
    auto p = parse_problem(problem_text);
    return {render_grading(problem_ring(p)), exit_pass};
  });
}

inline CommandResult cmd_basis(std::string_view problem_text, const CommandOptions &opt = {}) {
  return detail::guarded([&]() -> CommandResult {
    auto p = parse_problem(problem_text);
    auto R = problem_ring(p);
    BasisOptions bo;
    bo.allow_non_cy = opt.allow_non_cy;
    auto B = jacobian_basis(R, bo);
    return {render_grading(R) + '\n' + render_basis(B, R), exit_pass};
  });
}

inline CommandResult cmd_unfold(std::string_view problem_text, const CommandOptions &opt = {}) {
  return detail::guarded([&]() -> CommandResult {
    auto p = parse_problem(problem_text);
    const std::size_t order = opt.order.value_or(p.order);
    if (order < 1)
      throw std::invalid_argument("order must be at least 1");
    auto R = problem_ring(p);
    if (!is_calabi_yau(R))
      throw NotCalabiYau("background charge " + render_charge(R.background_charge()) +
                         " is nonzero; unfolding needs a Calabi-Yau input");
    auto engine = std::make_shared<const JacobianEngine>(R);
    auto B = jacobian_basis(*engine);
    UnfoldingOptions uo;
    uo.retain_intermediates = p.retain_intermediates;
    auto state = run_unfolding(engine, B, order, uo);
    auto rep = run_checks(state, opt.checks.value_or(p.checks));
    return {render_report(state, rep), rep.passed() ? exit_pass : exit_verification_failed};
  });
}

} // namespace torflat

#endif // TORFLAT_PIPELINE_HPP
