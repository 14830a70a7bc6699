#include "rbma/rbma.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "rbma/error.hpp"
#include "rbma/instance.hpp"
#include "rbma/io.hpp"
#include "rbma/rbm.hpp"
#include "rbma/rbmaa.hpp"
#include "rbma/solve_report.hpp"

struct rbma_instance {
  rbma::Instance value;
};

struct rbma_solution {
  rbma::SolveReport report;
};

struct rbma_params {
  rbma::RbmParams value;
};

namespace {

thread_local std::string g_last_error;

rbma_status to_status(rbma::ErrorCode code) {
  using rbma::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return RBMA_ERR_INVALID_ARGUMENT;
    case ErrorCode::kShapeMismatch: return RBMA_ERR_SHAPE;
    case ErrorCode::kIo: return RBMA_ERR_IO;
    case ErrorCode::kParse: return RBMA_ERR_PARSE;
    case ErrorCode::kVersion: return RBMA_ERR_VERSION;
    case ErrorCode::kDimension: return RBMA_ERR_DIMENSION;
    case ErrorCode::kInfeasible: return RBMA_ERR_INFEASIBLE;
    case ErrorCode::kUnassignableRow: return RBMA_ERR_UNASSIGNABLE_ROW;
    case ErrorCode::kDivergence: return RBMA_ERR_DIVERGENCE;
    case ErrorCode::kTooLarge: return RBMA_ERR_TOO_LARGE;
  }
  return RBMA_ERR_INTERNAL;
}

rbma_status fail(rbma_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs `fn`, converting any exception into a status code.
template <typename Fn>
rbma_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return RBMA_OK;
  } catch (const rbma::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RBMA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RBMA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RBMA_ERR_INTERNAL, "unknown error");
  }
}

rbma::Method to_method(rbma_method m) {
  switch (m) {
    case RBMA_METHOD_RBMAA: return rbma::Method::kRbmaa;
    case RBMA_METHOD_HUNGARIAN: return rbma::Method::kHungarian;
    case RBMA_METHOD_GREEDY: return rbma::Method::kGreedy;
    case RBMA_METHOD_BRUTE_FORCE: return rbma::Method::kBruteForce;
  }
  throw rbma::Error(rbma::ErrorCode::kInvalidArgument, "unknown method");
}

rbma_method from_method(rbma::Method m) {
  switch (m) {
    case rbma::Method::kRbmaa: return RBMA_METHOD_RBMAA;
    case rbma::Method::kHungarian: return RBMA_METHOD_HUNGARIAN;
    case rbma::Method::kGreedy: return RBMA_METHOD_GREEDY;
    case rbma::Method::kBruteForce: return RBMA_METHOD_BRUTE_FORCE;
  }
  return RBMA_METHOD_RBMAA;
}

rbma::RbmaaConfig to_config(const rbma_config& c) {
  rbma::RbmaaConfig cfg;
  cfg.train.alpha = c.alpha;
  cfg.train.beta = c.beta;
  cfg.train.eta = c.eta;
  cfg.train.cd_k = c.cd_k;
  cfg.train.epochs = c.epochs;
  cfg.train.batch = c.batch;
  cfg.train.seed = c.seed;
  cfg.quantile_level = c.quantile;
  cfg.max_outer_iters = c.max_outer_iters;
  if (c.hidden_units > 0) cfg.hidden_units = c.hidden_units;
  return cfg;
}

void require(bool ok, const char* what) {
  if (!ok) throw rbma::Error(rbma::ErrorCode::kInvalidArgument, what);
}

}  // namespace

extern "C" {

const char* rbma_version(void) { return "1.0.0"; }

const char* rbma_last_error(void) { return g_last_error.c_str(); }

const char* rbma_status_name(rbma_status status) {
  switch (status) {
    case RBMA_OK: return "ok";
    case RBMA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RBMA_ERR_SHAPE: return "shape mismatch";
    case RBMA_ERR_IO: return "i/o error";
    case RBMA_ERR_PARSE: return "parse error";
    case RBMA_ERR_VERSION: return "version mismatch";
    case RBMA_ERR_DIMENSION: return "dimension mismatch";
    case RBMA_ERR_INFEASIBLE: return "infeasible";
    case RBMA_ERR_UNASSIGNABLE_ROW: return "unassignable row";
    case RBMA_ERR_DIVERGENCE: return "divergence";
    case RBMA_ERR_TOO_LARGE: return "too large";
    case RBMA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void rbma_config_init(rbma_config* cfg) {
  if (!cfg) return;
  const rbma::RbmaaConfig d;
  cfg->alpha = d.train.alpha;
  cfg->beta = d.train.beta;
  cfg->eta = d.train.eta;
  cfg->cd_k = d.train.cd_k;
  cfg->epochs = d.train.epochs;
  cfg->batch = d.train.batch;
  cfg->seed = d.train.seed;
  cfg->quantile = d.quantile_level;
  cfg->max_outer_iters = d.max_outer_iters;
  cfg->hidden_units = 0;
}

const char* rbma_method_name(rbma_method method) {
  try {
    return rbma::method_name(to_method(method)).data();
  } catch (...) {
    return "unknown";
  }
}

rbma_status rbma_method_parse(const char* name, rbma_method* out) {
  return guarded([&] {
    require(name && out, "null argument");
    const auto m = rbma::parse_method(name);
    if (!m) {
      throw rbma::Error(rbma::ErrorCode::kInvalidArgument,
                        std::string("unknown method '") + name + "'");
    }
    *out = from_method(*m);
  });
}

rbma_status rbma_instance_from_history_file(const char* path, rbma_instance** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    *out = new rbma_instance{rbma::build_weight_matrix(rbma::io::read_history(path))};
  });
}

rbma_status rbma_instance_from_records(const char* const* left, const char* const* right,
                                       size_t count, rbma_instance** out) {
  return guarded([&] {
    require(out && (count == 0 || (left && right)), "null argument");
    *out = nullptr;
    std::vector<rbma::HistoryRecord> records;
    records.reserve(count);
    for (size_t k = 0; k < count; ++k) {
      require(left[k] && right[k], "null label");
      records.push_back({left[k], right[k]});
    }
    *out = new rbma_instance{rbma::build_weight_matrix(records)};
  });
}

void rbma_instance_free(rbma_instance* inst) { delete inst; }

size_t rbma_instance_rows(const rbma_instance* inst) { return inst ? inst->value.rows() : 0; }
size_t rbma_instance_cols(const rbma_instance* inst) { return inst ? inst->value.cols() : 0; }

const char* rbma_instance_left_label(const rbma_instance* inst, size_t row) {
  if (!inst || row >= inst->value.rows()) return nullptr;
  return inst->value.left_labels()[row].c_str();
}

const char* rbma_instance_right_label(const rbma_instance* inst, size_t col) {
  if (!inst || col >= inst->value.cols()) return nullptr;
  return inst->value.right_labels()[col].c_str();
}

rbma_status rbma_instance_weight(const rbma_instance* inst, size_t row, size_t col, double* out) {
  return guarded([&] {
    require(inst && out, "null argument");
    require(row < inst->value.rows() && col < inst->value.cols(), "index out of range");
    *out = inst->value.weights()(row, col);
  });
}

rbma_status rbma_instance_write_matrix(const rbma_instance* inst, const char* path) {
  return guarded([&] {
    require(inst && path, "null argument");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw rbma::Error(rbma::ErrorCode::kIo, std::string("cannot write '") + path + "'");
    rbma::io::write_weight_matrix(out, inst->value);
    if (!out) throw rbma::Error(rbma::ErrorCode::kIo, std::string("write failed for '") + path + "'");
  });
}

rbma_status rbma_solve(const rbma_instance* inst, rbma_method method, const rbma_config* cfg,
                       rbma_solution** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = nullptr;
    rbma_config c;
    rbma_config_init(&c);
    if (cfg) c = *cfg;
    *out = new rbma_solution{rbma::run_method(inst->value, to_method(method), to_config(c))};
  });
}

void rbma_solution_free(rbma_solution* sol) { delete sol; }

rbma_method rbma_solution_method(const rbma_solution* sol) {
  return sol ? from_method(sol->report.method) : RBMA_METHOD_RBMAA;
}

size_t rbma_solution_rows(const rbma_solution* sol) {
  return sol ? sol->report.assignment.rows() : 0;
}

int64_t rbma_solution_column(const rbma_solution* sol, size_t row) {
  if (!sol || row >= sol->report.assignment.rows()) return -1;
  int64_t col = -1;
  const auto r = sol->report.assignment.row(row);
  for (size_t j = 0; j < r.size(); ++j) {
    if (!r[j]) continue;
    if (col >= 0) return -1;
    col = static_cast<int64_t>(j);
  }
  return col;
}

double rbma_solution_objective(const rbma_solution* sol) { return sol ? sol->report.objective : 0.0; }
int rbma_solution_row_feasible(const rbma_solution* sol) { return sol && sol->report.row_feasible; }
int rbma_solution_perfect_feasible(const rbma_solution* sol) {
  return sol && sol->report.perfect_feasible;
}
size_t rbma_solution_iterations(const rbma_solution* sol) { return sol ? sol->report.iterations : 0; }
double rbma_solution_runtime_ms(const rbma_solution* sol) { return sol ? sol->report.runtime_ms : 0.0; }

size_t rbma_solution_fallback_rows(const rbma_solution* sol) {
  return sol && sol->report.trace ? sol->report.trace->fallback_rows.size() : 0;
}

int rbma_solution_has_params(const rbma_solution* sol) {
  return sol && sol->report.params.has_value();
}

rbma_status rbma_solution_agreement(const rbma_solution* a, const rbma_solution* b, double* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = rbma::agreement(a->report.assignment, b->report.assignment);
  });
}

rbma_status rbma_solution_write_assignment(const rbma_solution* sol, const rbma_instance* inst,
                                           const char* path) {
  return guarded([&] {
    require(sol && inst && path, "null argument");
    rbma::io::write_assignment(std::filesystem::path(path), inst->value, sol->report.assignment);
  });
}

rbma_status rbma_solution_write_trace(const rbma_solution* sol, const char* path) {
  return guarded([&] {
    require(sol && path, "null argument");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw rbma::Error(rbma::ErrorCode::kIo, std::string("cannot write '") + path + "'");
    rbma::io::write_trace(out, sol->report.trace.value_or(rbma::RbmaaTrace{}));
    if (!out) throw rbma::Error(rbma::ErrorCode::kIo, std::string("write failed for '") + path + "'");
  });
}

rbma_status rbma_solution_params(const rbma_solution* sol, rbma_params** out) {
  return guarded([&] {
    require(sol && out, "null argument");
    *out = nullptr;
    if (!sol->report.params) {
      throw rbma::Error(rbma::ErrorCode::kInvalidArgument, "solution has no trained parameters");
    }
    *out = new rbma_params{*sol->report.params};
  });
}

rbma_status rbma_validate_assignment_file(const rbma_instance* inst, const char* path,
                                          rbma_feasibility_mode mode, int* feasible,
                                          char* detail, size_t detail_len) {
  return guarded([&] {
    require(inst && path && feasible, "null argument");
    const auto pairs = rbma::io::read_history(path);
    const auto x = rbma::io::assignment_matrix(inst->value, pairs);
    const auto report = rbma::check_feasibility(
        x, mode == RBMA_MODE_PERFECT ? rbma::FeasibilityMode::kPerfect
                                     : rbma::FeasibilityMode::kRowOnly);
    *feasible = report.feasible ? 1 : 0;
    if (detail && detail_len > 0) {
      const std::string text = report.describe();
      const size_t n = std::min(text.size(), detail_len - 1);
      std::memcpy(detail, text.data(), n);
      detail[n] = '\0';
    }
  });
}

rbma_status rbma_params_load(const char* path, rbma_params** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    *out = new rbma_params{rbma::io::load_params(path)};
  });
}

rbma_status rbma_params_save(const rbma_params* params, const char* path) {
  return guarded([&] {
    require(params && path, "null argument");
    rbma::io::save_params(path, params->value);
  });
}

void rbma_params_free(rbma_params* params) { delete params; }

size_t rbma_params_visible(const rbma_params* params) { return params ? params->value.visible() : 0; }
size_t rbma_params_hidden(const rbma_params* params) { return params ? params->value.hidden() : 0; }

double rbma_params_conn(const rbma_params* params, size_t i, size_t j) {
  if (!params || i >= params->value.visible() || j >= params->value.hidden()) return 0.0;
  return params->value.conn(i, j);
}

int rbma_params_equal(const rbma_params* a, const rbma_params* b) {
  return a && b && a->value == b->value;
}

rbma_status rbma_generate_synthetic(size_t rows, size_t cols, size_t per_row, double concentration,
                                    uint64_t seed, const char* path) {
  return guarded([&] {
    require(path != nullptr, "null argument");
    rbma::io::write_history(path,
                            rbma::io::generate_synthetic(rows, cols, per_row, concentration, seed));
  });
}

}  // extern "C"
