#include "colorcoal/colorcoal.h"

#include <cmath>
#include <exception>
#include <string>

#include "colorcoal/analytic.hpp"
#include "colorcoal/error.hpp"
#include "colorcoal/generator.hpp"
#include "colorcoal/lumping.hpp"
#include "colorcoal/simulator.hpp"
#include "colorcoal/wright_fisher.hpp"

struct cc_generator {
  colorcoal::Generator generator;
  colorcoal::Matrix jump;
};

struct cc_ccdf {
  colorcoal::ExpoMixture mixture;
};

struct cc_sim_report {
  colorcoal::SimReport report;
};

namespace {

using namespace colorcoal;

thread_local std::string last_error;

cc_status fail(cc_status status, const char* message) {
  last_error = message;
  return status;
}

struct BufferTooSmall {};

template <class Fn>
cc_status guarded(Fn&& fn) {
  try {
    fn();
    return CC_OK;
  } catch (const InvalidArgument& e) {
    return fail(CC_INVALID_ARGUMENT, e.what());
  } catch (const SingularMatrix& e) {
    return fail(CC_SINGULAR_MATRIX, e.what());
  } catch (const NotLumpable& e) {
    return fail(CC_NOT_LUMPABLE, e.what());
  } catch (const UndefinedPosterior& e) {
    return fail(CC_UNDEFINED_POSTERIOR, e.what());
  } catch (const BufferTooSmall&) {
    return fail(CC_BUFFER_TOO_SMALL, "output buffer is too small");
  } catch (const std::exception& e) {
    return fail(CC_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(CC_INTERNAL_ERROR, "unknown error");
  }
}

void require_out(const void* p) { detail::require(p != nullptr, "output pointer is null"); }

Parity to_parity(cc_parity p) {
  detail::require(p == CC_EVEN || p == CC_ODD, "parity must be CC_EVEN or CC_ODD");
  return p == CC_EVEN ? Parity::Even : Parity::Odd;
}

void copy_row_major(const Matrix& m, double* out, std::size_t capacity) {
  require_out(out);
  if (capacity < static_cast<std::size_t>(m.size())) throw BufferTooSmall{};
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) *out++ = m(i, j);
}

}  // namespace

extern "C" {

const char* cc_version(void) { return "1.0.0"; }

const char* cc_status_string(cc_status status) {
  switch (status) {
    case CC_OK: return "ok";
    case CC_INVALID_ARGUMENT: return "invalid argument";
    case CC_SINGULAR_MATRIX: return "singular matrix";
    case CC_NOT_LUMPABLE: return "not lumpable";
    case CC_UNDEFINED_POSTERIOR: return "undefined posterior";
    case CC_BUFFER_TOO_SMALL: return "buffer too small";
    case CC_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* cc_last_error(void) { return last_error.c_str(); }

cc_status cc_generator_create(int n, double x, cc_generator** out) {
  return guarded([&] {
    require_out(out);
    *out = nullptr;
    auto g = build_generator(n, x);
    Matrix jump = embedded_jump_chain(g.rates);
    *out = new cc_generator{std::move(g), std::move(jump)};
  });
}

void cc_generator_destroy(cc_generator* g) { delete g; }

size_t cc_generator_size(const cc_generator* g) { return g ? g->generator.space.size() : 0; }

cc_status cc_generator_state(const cc_generator* g, size_t index, int* black, int* white) {
  return guarded([&] {
    detail::require(g != nullptr, "generator handle is null");
    require_out(black);
    require_out(white);
    detail::require(index < g->generator.space.size(), "state index out of range");
    const auto s = g->generator.space[index];
    *black = s.black;
    *white = s.white;
  });
}

cc_status cc_generator_rates(const cc_generator* g, double* out, size_t capacity) {
  return guarded([&] {
    detail::require(g != nullptr, "generator handle is null");
    copy_row_major(g->generator.rates, out, capacity);
  });
}

cc_status cc_generator_jump_chain(const cc_generator* g, double* out, size_t capacity) {
  return guarded([&] {
    detail::require(g != nullptr, "generator handle is null");
    copy_row_major(g->jump, out, capacity);
  });
}

cc_status cc_absorption_probabilities(int n, double x, double* out, size_t capacity) {
  return guarded([&] { copy_row_major(absorption_probabilities_exact(n, x), out, capacity); });
}

cc_status cc_exact(int n1, int n2, double x, cc_exact_result* out) {
  return guarded([&] {
    require_out(out);
    const auto s = colored_time_summary(n1, n2, x);
    const int n = n1 + n2;
    const Matrix absorb = absorption_probabilities_exact(n, x);
    const auto chain = jump_chain(build_generator(n, x));
    const Vector any = expected_absorption_times(chain);
    *out = cc_exact_result{
        s.p_white_root, s.p_black_root, s.e_time_white, s.e_time_black, s.e_time_any,
        absorb(n1, 0), absorb(n1, 1),
        conditional_mean_times(n, x, Parity::Even)(n1),
        conditional_mean_times(n, x, Parity::Odd)(n1),
        any(n1),
    };
  });
}

cc_status cc_ccdf_create(int n, cc_parity start, cc_parity target, double x, cc_ccdf_form form,
                         cc_ccdf** out) {
  return guarded([&] {
    require_out(out);
    *out = nullptr;
    detail::require(form == CC_CCDF_CORRECTED || form == CC_CCDF_UNCORRECTED, "unknown CCDF form");
    auto mix = ccdf_colored_time(n, to_parity(start), to_parity(target), x,
                                 form == CC_CCDF_CORRECTED ? CcdfForm::Corrected : CcdfForm::Uncorrected);
    *out = new cc_ccdf{std::move(mix)};
  });
}

cc_status cc_ccdf_create_total(int n, cc_ccdf** out) {
  return guarded([&] {
    require_out(out);
    *out = nullptr;
    *out = new cc_ccdf{ccdf_total_time(n)};
  });
}

void cc_ccdf_destroy(cc_ccdf* c) { delete c; }

double cc_ccdf_eval(const cc_ccdf* c, double t) { return c ? c->mixture(t) : std::nan(""); }

double cc_ccdf_integral(const cc_ccdf* c) { return c ? c->mixture.integral() : std::nan(""); }

size_t cc_ccdf_term_count(const cc_ccdf* c) { return c ? c->mixture.terms().size() : 0; }

cc_status cc_ccdf_term(const cc_ccdf* c, size_t i, double* coefficient, double* rate) {
  return guarded([&] {
    detail::require(c != nullptr, "ccdf handle is null");
    require_out(coefficient);
    require_out(rate);
    detail::require(i < c->mixture.terms().size(), "term index out of range");
    *coefficient = c->mixture.terms()[i].coefficient;
    *rate = c->mixture.terms()[i].rate;
  });
}

cc_status cc_ccdf_oracle(int n, cc_parity start, cc_parity target, double x, double t0, double step,
                         size_t count, double* out) {
  return guarded([&] {
    require_out(out);
    const Matrix survival = conditional_survival(n, x, to_parity(target), t0, step, count);
    const Eigen::Index column = to_parity(start) == Parity::Even ? 0 : 1;
    for (std::size_t i = 0; i < count; ++i) out[i] = survival(static_cast<Eigen::Index>(i), column);
  });
}

cc_status cc_lump_check(int n, double x, const double* times, size_t count, cc_lump_result* out,
                        double* semigroup_residuals) {
  return guarded([&] {
    require_out(out);
    detail::require(count == 0 || (times != nullptr && semigroup_residuals != nullptr),
                    "times and residual buffers are required when count > 0");
    const auto g = build_generator(n, x);
    const auto partition = parity_partition(g.space);
    const auto uv = uv_matrices(partition, g.space.size());
    const auto report = check_lumpable(g.rates, partition, MatrixKind::Generator);
    const Matrix lumped = lump(g.rates, partition, MatrixKind::Generator);
    const Matrix jump = embedded_jump_chain(g.rates);
    const Matrix lumped_jump = lump(jump, partition, MatrixKind::Stochastic);
    out->generator_residual = report.max_violation;
    out->diagram_residual = linalg::inf_norm(embedded_jump_chain(lumped) - lumped_jump);

    const auto t = static_cast<Eigen::Index>(g.space.transient_count());
    const Matrix fundamental = linalg::solve_linear(Matrix::Identity(t, t) - jump.topLeftCorner(t, t),
                                                    Matrix::Identity(t, t));
    const auto v = static_cast<Eigen::Index>(partition.block_count()) - 2;
    const Matrix lumped_fundamental = linalg::solve_linear(
        Matrix::Identity(v, v) - lumped_jump.topLeftCorner(v, v), Matrix::Identity(v, v));
    const auto uv0 = drop_trailing(uv, 2, 2);
    out->fundamental_residual = linalg::inf_norm(uv0.U * fundamental * uv0.V - lumped_fundamental);

    for (std::size_t i = 0; i < count; ++i) {
      const Matrix lhs = uv.U * linalg::mat_exp(g.rates, times[i]) * uv.V;
      semigroup_residuals[i] = linalg::inf_norm(lhs - linalg::mat_exp(lumped, times[i]));
    }
  });
}

cc_status cc_parity_distribution(int k, double x, cc_parity rho0, double* even, double* odd) {
  return guarded([&] {
    require_out(even);
    require_out(odd);
    const auto d = parity_distribution(k, x, to_parity(rho0));
    *even = d.even;
    *odd = d.odd;
  });
}

cc_status cc_simulate(const cc_sim_config* cfg, cc_sim_report** out) {
  return guarded([&] {
    require_out(cfg);
    require_out(out);
    *out = nullptr;
    SimConfig c;
    c.n = cfg->n;
    c.n1 = cfg->n1;
    c.x = cfg->x;
    c.replicates = cfg->replicates;
    c.seed = cfg->seed;
    switch (cfg->mode) {
      case CC_SIM_FULL: c.mode = SimMode::Full; break;
      case CC_SIM_LUMPED: c.mode = SimMode::Lumped; break;
      case CC_SIM_CONDITIONAL: c.mode = SimMode::Conditional; break;
      default: throw InvalidArgument("unknown simulation mode");
    }
    c.target = to_parity(cfg->target);
    detail::require(cfg->ccdf_grid_len == 0 || cfg->ccdf_grid != nullptr, "CCDF grid pointer is null");
    c.ccdf_grid.assign(cfg->ccdf_grid, cfg->ccdf_grid + cfg->ccdf_grid_len);
    c.threads = cfg->threads;
    *out = new cc_sim_report{run_experiment(c)};
  });
}

void cc_sim_report_destroy(cc_sim_report* r) { delete r; }

cc_status cc_sim_report_summary(const cc_sim_report* r, cc_sim_summary* out) {
  return guarded([&] {
    detail::require(r != nullptr, "report handle is null");
    require_out(out);
    const auto& s = r->report;
    *out = cc_sim_summary{s.seed, s.replicates, s.freq_white_root, s.freq_black_root, s.stderr_freq,
                          s.mean_time_any, s.stderr_time_any, s.mean_time_white, s.stderr_time_white,
                          s.mean_time_black, s.stderr_time_black};
  });
}

size_t cc_sim_report_ccdf_size(const cc_sim_report* r) { return r ? r->report.empirical_ccdf.size() : 0; }

cc_status cc_sim_report_ccdf_point(const cc_sim_report* r, size_t i, double* t, double* value) {
  return guarded([&] {
    detail::require(r != nullptr, "report handle is null");
    require_out(t);
    require_out(value);
    detail::require(i < r->report.empirical_ccdf.size(), "CCDF index out of range");
    *t = r->report.empirical_ccdf[i].t;
    *value = r->report.empirical_ccdf[i].value;
  });
}

size_t cc_sim_report_parity_size(const cc_sim_report* r) { return r ? r->report.parity_even_after.size() : 0; }

cc_status cc_sim_report_parity_even(const cc_sim_report* r, size_t k, double* fraction) {
  return guarded([&] {
    detail::require(r != nullptr, "report handle is null");
    require_out(fraction);
    detail::require(k < r->report.parity_even_after.size(), "event index out of range");
    *fraction = r->report.parity_even_after[k];
  });
}

cc_status cc_wright_fisher(const cc_wf_config* cfg, double x, cc_wf_summary* out) {
  return guarded([&] {
    require_out(cfg);
    require_out(out);
    detail::require(cfg->n_black >= 0 && cfg->n_white >= 0, "lineage counts must be non-negative");
    WfConfig c;
    c.population = cfg->population;
    c.initial_colors.assign(static_cast<std::size_t>(cfg->n_black), Color::Black);
    c.initial_colors.insert(c.initial_colors.end(), static_cast<std::size_t>(cfg->n_white), Color::White);
    c.replicates = cfg->replicates;
    c.seed = cfg->seed;
    c.threads = cfg->threads;
    const auto s = run_wright_fisher(c, x);
    *out = cc_wf_summary{s.replicates, s.mean_tmrca_generations, s.mean_tmrca_coalescent,
                         s.stderr_tmrca_coalescent, s.freq_black_root, s.freq_white_root,
                         s.stderr_freq, s.limit_tmrca, s.limit_p_black_root};
  });
}

cc_status cc_parent_color_posterior(double p, double q, const int* children, size_t count,
                                    double prior_black, double* post_black, double* post_white) {
  return guarded([&] {
    require_out(post_black);
    require_out(post_white);
    detail::require(count == 0 || children != nullptr, "children pointer is null");
    std::vector<Color> colors;
    for (std::size_t i = 0; i < count; ++i) colors.push_back(children[i] ? Color::Black : Color::White);
    const auto post = parent_color_posterior(p, q, colors, prior_black);
    *post_black = post.black;
    *post_white = post.white;
  });
}

}  // extern "C"
