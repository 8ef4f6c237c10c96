#include "stategeom/stategeom.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "stategeom/gns.hpp"
#include "stategeom/group_actions.hpp"
#include "stategeom/io.hpp"
#include "stategeom/isotropy.hpp"
#include "stategeom/orbit_atlas.hpp"
#include "stategeom/sampling.hpp"
#include "stategeom/state_model.hpp"
#include "stategeom/tangent_flow.hpp"

using namespace stategeom;

struct sg_context {
  Tolerance tol;
  std::string last_error;
};

struct sg_matrix {
  Operator m;
  sg_kind kind = SG_KIND_OPERATOR;
};

namespace {

struct InvalidArgument {
  const char* what;
};

sg_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return SG_ERR_NOT_HERMITIAN;
    case ErrorCode::NotPSD: return SG_ERR_NOT_PSD;
    case ErrorCode::ZeroFunctional: return SG_ERR_ZERO_FUNCTIONAL;
    case ErrorCode::TraceError: return SG_ERR_TRACE;
    case ErrorCode::NotUnitary: return SG_ERR_NOT_UNITARY;
    case ErrorCode::ZeroWeight: return SG_ERR_ZERO_WEIGHT;
    case ErrorCode::RankMismatch: return SG_ERR_RANK_MISMATCH;
    case ErrorCode::NotTracial: return SG_ERR_NOT_TRACIAL;
    case ErrorCode::DomainError: return SG_ERR_DOMAIN;
    case ErrorCode::ParseError: return SG_ERR_PARSE;
    case ErrorCode::ConfigError: return SG_ERR_CONFIG;
    case ErrorCode::Singular: return SG_ERR_SINGULAR;
    case ErrorCode::NumericallySingular: return SG_ERR_NUMERICALLY_SINGULAR;
  }
  return SG_ERR_INTERNAL;
}

template <typename Fn>
sg_status guarded(sg_context* ctx, Fn&& fn) {
  if (!ctx) return SG_ERR_INVALID_ARGUMENT;
  ctx->last_error.clear();
  try {
    fn();
    return SG_OK;
  } catch (const InvalidArgument& e) {
    ctx->last_error = e.what;
    return SG_ERR_INVALID_ARGUMENT;
  } catch (const Error& e) {
    ctx->last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return SG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return SG_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw InvalidArgument{what};
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

io::MatrixKind to_kind(sg_kind kind) {
  switch (kind) {
    case SG_KIND_STATE: return io::MatrixKind::State;
    case SG_KIND_POSITIVE: return io::MatrixKind::Positive;
    case SG_KIND_OPERATOR: break;
  }
  return io::MatrixKind::Operator;
}

sg_kind from_kind(io::MatrixKind kind) {
  switch (kind) {
    case io::MatrixKind::State: return SG_KIND_STATE;
    case io::MatrixKind::Positive: return SG_KIND_POSITIVE;
    case io::MatrixKind::Operator: break;
  }
  return SG_KIND_OPERATOR;
}

bool valid_kind(sg_kind kind) {
  return kind == SG_KIND_OPERATOR || kind == SG_KIND_STATE || kind == SG_KIND_POSITIVE;
}

// Kind-specific validation applied whenever a matrix enters the library.
void check_kind(const Operator& m, sg_kind kind, Tolerance tol) {
  if (!is_finite(m)) throw Error(ErrorCode::DomainError, "matrix has non-finite entries");
  if (kind == SG_KIND_STATE) validate_state(m, tol);
  if (kind == SG_KIND_POSITIVE) validate_positive(m, tol);
}

sg_matrix* make_matrix(Operator m, sg_kind kind) {
  auto* out = new sg_matrix;
  out->m = std::move(m);
  out->kind = kind;
  return out;
}

Action to_action(sg_action action) {
  require(action == SG_ACTION_ALPHA || action == SG_ACTION_PHI, "unknown action");
  return action == SG_ACTION_ALPHA ? Action::Alpha : Action::Phi;
}

}  // namespace

extern "C" {

SG_API const char* sg_status_name(sg_status status) {
  switch (status) {
    case SG_OK: return "OK";
    case SG_ERR_NOT_HERMITIAN: return "NotHermitian";
    case SG_ERR_NOT_PSD: return "NotPSD";
    case SG_ERR_ZERO_FUNCTIONAL: return "ZeroFunctional";
    case SG_ERR_TRACE: return "TraceError";
    case SG_ERR_NOT_UNITARY: return "NotUnitary";
    case SG_ERR_ZERO_WEIGHT: return "ZeroWeight";
    case SG_ERR_RANK_MISMATCH: return "RankMismatch";
    case SG_ERR_NOT_TRACIAL: return "NotTracial";
    case SG_ERR_DOMAIN: return "DomainError";
    case SG_ERR_PARSE: return "ParseError";
    case SG_ERR_CONFIG: return "ConfigError";
    case SG_ERR_SINGULAR: return "Singular";
    case SG_ERR_NUMERICALLY_SINGULAR: return "NumericallySingular";
    case SG_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SG_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

SG_API int sg_status_is_numerical(sg_status status) {
  return status == SG_ERR_SINGULAR || status == SG_ERR_NUMERICALLY_SINGULAR;
}

SG_API sg_status sg_context_create(sg_context** out) {
  if (!out) return SG_ERR_INVALID_ARGUMENT;
  *out = new (std::nothrow) sg_context;
  return *out ? SG_OK : SG_ERR_INTERNAL;
}

SG_API void sg_context_destroy(sg_context* ctx) { delete ctx; }

SG_API sg_status sg_context_set_tolerance_scale(sg_context* ctx, double scale) {
  return guarded(ctx, [&] {
    require(scale > 0.0 && std::isfinite(scale), "tolerance scale must be positive and finite");
    ctx->tol.scale = scale;
  });
}

SG_API double sg_context_tolerance_scale(const sg_context* ctx) {
  return ctx ? ctx->tol.scale : 1.0;
}

SG_API const char* sg_context_last_error(const sg_context* ctx) {
  return ctx ? ctx->last_error.c_str() : "";
}

SG_API void sg_string_free(char* s) { std::free(s); }

SG_API sg_status sg_matrix_create(sg_context* ctx, size_t n, const double* interleaved,
                                  sg_kind kind, sg_matrix** out) {
  return guarded(ctx, [&] {
    require(out && interleaved && n > 0, "null argument or zero dimension");
    require(valid_kind(kind), "unknown matrix kind");
    const auto dim = static_cast<Eigen::Index>(n);
    Operator m(dim, dim);
    for (Eigen::Index idx = 0; idx < dim * dim; ++idx) {
      m(idx / dim, idx % dim) = Complex(interleaved[2 * idx], interleaved[2 * idx + 1]);
    }
    check_kind(m, kind, ctx->tol);
    *out = make_matrix(std::move(m), kind);
  });
}

SG_API sg_status sg_matrix_from_json(sg_context* ctx, const char* json, sg_matrix** out) {
  return guarded(ctx, [&] {
    require(out && json, "null argument");
    io::MatrixFile file = io::parse_matrix(json);
    const sg_kind kind = file.kind ? from_kind(*file.kind) : SG_KIND_OPERATOR;
    check_kind(file.matrix, kind, ctx->tol);
    *out = make_matrix(std::move(file.matrix), kind);
  });
}

SG_API sg_status sg_matrix_to_json(sg_context* ctx, const sg_matrix* m, char** out) {
  return guarded(ctx, [&] {
    require(m && out, "null argument");
    *out = copy_string(io::format_matrix(m->m, to_kind(m->kind)));
  });
}

SG_API size_t sg_matrix_dim(const sg_matrix* m) {
  return m ? static_cast<size_t>(m->m.rows()) : 0;
}

SG_API sg_kind sg_matrix_kind(const sg_matrix* m) { return m ? m->kind : SG_KIND_OPERATOR; }

SG_API sg_status sg_matrix_entries(const sg_matrix* m, double* out, size_t len) {
  if (!m || !out) return SG_ERR_INVALID_ARGUMENT;
  const auto n = m->m.rows();
  if (len < static_cast<size_t>(2 * n * n)) return SG_ERR_INVALID_ARGUMENT;
  for (Eigen::Index idx = 0; idx < n * n; ++idx) {
    const Complex z = m->m(idx / n, idx % n);
    out[2 * idx] = z.real();
    out[2 * idx + 1] = z.imag();
  }
  return SG_OK;
}

SG_API void sg_matrix_destroy(sg_matrix* m) { delete m; }

SG_API sg_status sg_validate(sg_context* ctx, const sg_matrix* m, sg_kind kind, char** report) {
  return guarded(ctx, [&] {
    require(m && report, "null argument");
    require(valid_kind(kind), "unknown matrix kind");
    io::Json doc = io::Json::object();
    doc["valid"] = true;
    doc["kind"] = std::string(io::kind_name(to_kind(kind)));
    doc["n"] = m->m.rows();
    if (kind == SG_KIND_OPERATOR) {
      check_kind(m->m, kind, ctx->tol);
      doc["hermitian_defect"] = hermiticity_defect(m->m);
      doc["frobenius_norm"] = frobenius_norm(m->m);
      const RealVector sigma = singular_values(m->m);
      doc["sigma_min"] = sigma(sigma.size() - 1);
      doc["sigma_max"] = sigma(0);
    } else {
      const PositiveFunctional f = kind == SG_KIND_STATE
                                       ? PositiveFunctional(validate_state(m->m, ctx->tol))
                                       : validate_positive(m->m, ctx->tol);
      const SpectralDecomposition eig = hermitian_eig(f.matrix(), ctx->tol);
      const OrbitClass cls = classify_orbit(f, {}, {}, ctx->tol);
      doc["trace"] = f.matrix().trace().real();
      doc["min_eigenvalue"] = eig.eigenvalues(eig.eigenvalues.size() - 1);
      doc["rank"] = cls.rank;
      doc["orbit_class"] = cls.label();
    }
    *report = copy_string(io::dump_canonical(doc));
  });
}

SG_API sg_status sg_act(sg_context* ctx, sg_action action, const sg_matrix* g, const sg_matrix* x,
                        sg_matrix** out) {
  return guarded(ctx, [&] {
    require(g && x && out, "null argument");
    require(g->m.rows() == x->m.rows(), "group element and argument differ in dimension");
    const GroupElement element = GroupElement::certify(g->m, ctx->tol);
    if (to_action(action) == Action::Alpha) {
      if (x->kind == SG_KIND_OPERATOR) {
        *out = make_matrix(alpha(element, x->m, ctx->tol), SG_KIND_OPERATOR);
      } else {
        const PositiveFunctional f = validate_positive(x->m, ctx->tol);
        *out = make_matrix(alpha(element, f).matrix(), SG_KIND_POSITIVE);
      }
    } else {
      const StateDensity rho = validate_state(x->m, ctx->tol);
      *out = make_matrix(phi(element, rho, ctx->tol).matrix(), SG_KIND_STATE);
    }
  });
}

SG_API sg_status sg_connect(sg_context* ctx, sg_action action, const sg_matrix* m0,
                            const sg_matrix* m1, char** certificate) {
  return guarded(ctx, [&] {
    require(m0 && m1 && certificate, "null argument");
    const Action which = to_action(action);
    const ConnectCertificate cert =
        which == Action::Alpha
            ? connect_alpha(validate_positive(m0->m, ctx->tol), validate_positive(m1->m, ctx->tol),
                            {}, ctx->tol)
            : connect_phi(validate_state(m0->m, ctx->tol), validate_state(m1->m, ctx->tol), {},
                          ctx->tol);
    *certificate = copy_string(io::dump_canonical(io::certificate_to_json(cert, which)));
  });
}

SG_API sg_status sg_isotropy(sg_context* ctx, sg_action action, const sg_matrix* m, char** report) {
  return guarded(ctx, [&] {
    require(m && report, "null argument");
    const Action which = to_action(action);
    const PositiveFunctional f = which == Action::Phi
                                     ? PositiveFunctional(validate_state(m->m, ctx->tol))
                                     : validate_positive(m->m, ctx->tol);
    const IsotropyReport r = isotropy_report(f, ctx->tol);
    *report = copy_string(io::dump_canonical(io::isotropy_report_to_json(r, which)));
  });
}

SG_API sg_status sg_tangent(sg_context* ctx, sg_action action, const sg_matrix* base,
                            const sg_matrix* generator, double h, sg_matrix** value, char** report) {
  return guarded(ctx, [&] {
    require(base && generator && value && report, "null argument");
    require(base->m.rows() == generator->m.rows(), "base and generator differ in dimension");
    const double step = h > 0.0 ? h : 1e-5;
    io::Json doc = io::Json::object();
    TangentVector t;
    if (to_action(action) == Action::Alpha) {
      t = tangent_alpha(validate_positive(base->m, ctx->tol), generator->m);
      doc["action"] = "alpha";
    } else {
      const StateDensity rho = validate_state(base->m, ctx->tol);
      t = tangent_phi(rho, generator->m);
      doc["action"] = "phi";
      doc["h"] = step;
      doc["fd_error"] = fd_tangent_check(rho, generator->m, step, ctx->tol);
    }
    doc["trace"] = t.value.trace().real();
    doc["hermitian_defect"] = hermiticity_defect(t.value);
    doc["tangent"] = io::matrix_to_json(t.value, io::MatrixKind::Operator);
    *report = copy_string(io::dump_canonical(doc));
    *value = make_matrix(std::move(t.value), SG_KIND_OPERATOR);
  });
}

SG_API sg_status sg_flow(sg_context* ctx, const sg_matrix* state, const sg_matrix* generator,
                         double t0, double t1, size_t steps, sg_format format, char** out) {
  return guarded(ctx, [&] {
    require(state && generator && out, "null argument");
    require(format == SG_FORMAT_JSON || format == SG_FORMAT_CSV, "unknown output format");
    require(state->m.rows() == generator->m.rows(), "state and generator differ in dimension");
    const StateDensity rho = validate_state(state->m, ctx->tol);
    const std::vector<double> grid = uniform_grid(t0, t1, steps);
    const std::vector<StateDensity> states = flow(rho, generator->m, grid, ctx->tol);
    *out = copy_string(format == SG_FORMAT_CSV ? io::flow_csv(grid, states)
                                               : io::dump_canonical(io::flow_to_json(grid, states)));
  });
}

SG_API sg_status sg_gns(sg_context* ctx, const sg_matrix* state, int verify, uint64_t seed,
                        char** json) {
  return guarded(ctx, [&] {
    require(state && json, "null argument");
    const StateDensity rho = validate_state(state->m, ctx->tol);
    const GnsTriple triple = gns_construct(rho, ctx->tol);
    if (verify) {
      Rng rng(seed);
      const GnsVerification check = verify_gns(triple, rho.matrix(), rng);
      *json = copy_string(io::dump_canonical(io::gns_to_json(triple, &check)));
    } else {
      *json = copy_string(io::dump_canonical(io::gns_to_json(triple)));
    }
  });
}

SG_API sg_status sg_truncate(sg_context* ctx, const char* config_json, sg_format format,
                             char** out) {
  return guarded(ctx, [&] {
    require(config_json && out, "null argument");
    require(format == SG_FORMAT_JSON || format == SG_FORMAT_CSV, "unknown output format");
    const io::TruncationConfig config = io::parse_truncation_config(config_json);
    const TruncationReport report =
        truncation_sweep(config.spec0, config.spec1, config.dims, config.ceiling, ctx->tol);
    *out = copy_string(format == SG_FORMAT_CSV ? io::truncation_csv(report)
                                               : io::dump_canonical(io::truncation_to_json(report)));
  });
}

SG_API sg_status sg_recombine(sg_context* ctx, const sg_matrix* tau, const sg_matrix* g1,
                              const sg_matrix* g2, double lambda, char** json) {
  return guarded(ctx, [&] {
    require(tau && g1 && g2 && json, "null argument");
    require(g1->m.rows() == tau->m.rows() && g2->m.rows() == tau->m.rows(),
            "state and group elements differ in dimension");
    const StateDensity t = validate_state(tau->m, ctx->tol);
    const Recombination r =
        convex_recombine(t, GroupElement::certify(g1->m, ctx->tol),
                         GroupElement::certify(g2->m, ctx->tol), lambda, ctx->tol);
    *json = copy_string(io::dump_canonical(io::recombination_to_json(r, lambda)));
  });
}

SG_API sg_status sg_sample(sg_context* ctx, const char* kind, size_t n, size_t rank, uint64_t seed,
                           sg_matrix** out) {
  return guarded(ctx, [&] {
    require(kind && out && n > 0, "null argument or zero dimension");
    Rng rng(seed);
    const std::string which(kind);
    if (which == "state") {
      *out = make_matrix(random_state(n, rank == 0 ? n : rank, rng).matrix(), SG_KIND_STATE);
    } else if (which == "invertible") {
      *out = make_matrix(random_invertible(n, rng), SG_KIND_OPERATOR);
    } else if (which == "unitary") {
      *out = make_matrix(random_unitary(n, rng), SG_KIND_OPERATOR);
    } else if (which == "hermitian") {
      *out = make_matrix(random_hermitian(n, rng), SG_KIND_OPERATOR);
    } else {
      throw InvalidArgument{"unknown sample kind"};
    }
  });
}

}  // extern "C"
