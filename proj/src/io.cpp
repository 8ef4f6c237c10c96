#include "stategeom/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace stategeom::io {

namespace {

double clean_zero(double x) { return x == 0.0 ? 0.0 : x; }

// Uncertified quantities are NaN; JSON has no NaN, so they become null.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json complex_pair(Complex z) { return Json::array({clean_zero(z.real()), clean_zero(z.imag())}); }

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_pair(v(i)));
  return out;
}

Json entries_to_json(const Operator& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(complex_pair(m(r, c)));
  }
  return out;
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

double finite_number(const Json& value, const char* what) {
  if (!value.is_number()) parse_fail(std::string(what) + " must be a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) parse_fail(std::string(what) + " must be finite");
  return x;
}

SpectrumSpec parse_spectrum(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw Error(ErrorCode::ConfigError, std::string(name) + " needs a string \"kind\"");
  }
  const std::string kind = doc["kind"].get<std::string>();
  SpectrumSpec spec;
  const auto number = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_number()) {
      throw Error(ErrorCode::ConfigError, std::string(name) + " needs numeric \"" + key + "\"");
    }
    return doc[key].get<double>();
  };
  if (kind == "gibbs") {
    spec.kind = SpectrumSpec::Kind::Gibbs;
    spec.parameter = number("ratio");
    if (!(spec.parameter > 0.0 && spec.parameter < 1.0)) {
      throw Error(ErrorCode::ConfigError, "gibbs ratio must lie in (0, 1)");
    }
  } else if (kind == "uniform") {
    spec.kind = SpectrumSpec::Kind::Uniform;
    spec.parameter = 0.0;
  } else if (kind == "power") {
    spec.kind = SpectrumSpec::Kind::Power;
    spec.parameter = number("exponent");
    if (!(spec.parameter > 0.0)) throw Error(ErrorCode::ConfigError, "power exponent must be positive");
  } else {
    throw Error(ErrorCode::ConfigError, "unknown spectrum kind \"" + kind + "\"");
  }
  return spec;
}

}  // namespace

std::string_view kind_name(MatrixKind kind) noexcept {
  switch (kind) {
    case MatrixKind::Operator: return "operator";
    case MatrixKind::State: return "state";
    case MatrixKind::Positive: return "positive";
  }
  return "operator";
}

MatrixKind parse_kind(std::string_view name) {
  if (name == "operator") return MatrixKind::Operator;
  if (name == "state") return MatrixKind::State;
  if (name == "positive") return MatrixKind::Positive;
  parse_fail("unknown matrix kind \"" + std::string(name) + "\"");
}

MatrixFile parse_matrix(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
  return matrix_from_json(doc);
}

MatrixFile matrix_from_json(const Json& doc) {
  if (!doc.is_object()) parse_fail("matrix document must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() <= 0) {
    parse_fail("\"n\" must be a positive integer");
  }
  const auto n = doc["n"].get<long long>();
  if (!doc.contains("entries") || !doc["entries"].is_array()) parse_fail("\"entries\" must be an array");
  const Json& entries = doc["entries"];
  if (static_cast<long long>(entries.size()) != n * n) {
    std::ostringstream msg;
    msg << "expected " << n * n << " entries, found " << entries.size();
    parse_fail(msg.str());
  }
  MatrixFile file;
  file.matrix.resize(n, n);
  for (long long idx = 0; idx < n * n; ++idx) {
    const Json& pair = entries[static_cast<std::size_t>(idx)];
    if (!pair.is_array() || pair.size() != 2) parse_fail("each entry must be a [re, im] pair");
    file.matrix(idx / n, idx % n) =
        Complex(finite_number(pair[0], "entry real part"), finite_number(pair[1], "entry imaginary part"));
  }
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) parse_fail("\"kind\" must be a string");
    file.kind = parse_kind(doc["kind"].get<std::string>());
  }
  return file;
}

Json matrix_to_json(const Operator& m, std::optional<MatrixKind> kind) {
  Json doc = Json::object();
  doc["n"] = m.rows();
  if (kind) doc["kind"] = std::string(kind_name(*kind));
  doc["entries"] = entries_to_json(m);
  return doc;
}

std::string dump_canonical(const Json& doc) { return doc.dump() + "\n"; }

std::string format_matrix(const Operator& m, std::optional<MatrixKind> kind) {
  return dump_canonical(matrix_to_json(m, kind));
}

std::string csv_number(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", clean_zero(x));
  return buffer;
}

Json certificate_to_json(const ConnectCertificate& cert, Action action) {
  Json doc = Json::object();
  doc["action"] = action == Action::Alpha ? "alpha" : "phi";
  doc["C"] = cert.bound_constant;
  doc["norm_bound"] = cert.norm_bound;
  doc["opnorm"] = cert.opnorm;
  doc["residual"] = cert.achieved_residual;
  doc["g"] = matrix_to_json(cert.g.matrix(), MatrixKind::Operator);
  return doc;
}

Json isotropy_report_to_json(const IsotropyReport& report, Action action) {
  Json doc = Json::object();
  doc["action"] = action == Action::Alpha ? "alpha" : "phi";
  doc["n"] = report.n;
  doc["rank"] = report.rank;
  doc["ambient_dim"] = report.ambient_dim;
  doc["dim_alpha"] = report.dim_alpha;
  doc["dim_phi"] = report.dim_phi;
  doc["dim_complement"] = report.dim_complement;
  doc["orbit_dim"] = action == Action::Alpha ? report.orbit_dim_alpha : report.orbit_dim_phi;
  doc["residual_alpha"] = report.residual_alpha;
  doc["residual_phi"] = report.residual_phi;
  doc["direct_sum_rank"] = report.direct_sum_rank;
  return doc;
}

Json gns_to_json(const GnsTriple& triple, const GnsVerification* verification) {
  Json doc = Json::object();
  doc["n"] = triple.n;
  doc["dim"] = triple.dim;
  doc["algebra"] = triple.abelian() && triple.n > 1 ? "diagonal" : "full";
  Json basis = Json::array();
  for (const MatrixUnit& u : triple.basis) basis.push_back(Json::array({u.row, u.col}));
  doc["basis"] = std::move(basis);
  Json rep = Json::array();
  for (const Operator& r : triple.rep) rep.push_back(entries_to_json(r));
  doc["rep"] = std::move(rep);
  doc["cyclic"] = vector_to_json(triple.cyclic);
  if (verification) {
    Json check = Json::object();
    check["homomorphism"] = verification->homomorphism;
    check["involution"] = verification->involution;
    check["unit"] = verification->unit;
    check["reconstruction"] = verification->reconstruction;
    check["cyclic_norm"] = verification->cyclic_norm;
    check["cyclic_rank"] = verification->cyclic_rank;
    doc["verification"] = std::move(check);
  }
  return doc;
}

Json recombination_to_json(const Recombination& r, double lambda) {
  Json doc = Json::object();
  doc["lambda"] = lambda;
  doc["residual"] = r.residual;
  doc["p"] = matrix_to_json(r.p.matrix(), MatrixKind::Operator);
  return doc;
}

std::string truncation_csv(const TruncationReport& report) {
  std::ostringstream out;
  out << "n,C,opnorm,residual,flag\n";
  for (const TruncationRow& row : report.rows) {
    out << row.n << ',' << csv_number(row.bound_constant) << ',' << csv_number(row.opnorm) << ','
        << csv_number(row.residual) << ',' << (row.diverged ? "diverged" : "ok") << '\n';
  }
  return out.str();
}

Json truncation_to_json(const TruncationReport& report) {
  Json doc = Json::object();
  doc["ceiling"] = report.ceiling;
  Json rows = Json::array();
  for (const TruncationRow& row : report.rows) {
    Json r = Json::object();
    r["n"] = row.n;
    r["C"] = finite_or_null(row.bound_constant);
    r["opnorm"] = finite_or_null(row.opnorm);
    r["residual"] = finite_or_null(row.residual);
    r["flag"] = row.diverged ? "diverged" : "ok";
    r["orbit_class"] = row.orbit_class;
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

Json flow_to_json(const std::vector<double>& grid, const std::vector<StateDensity>& states) {
  Json points = Json::array();
  for (std::size_t i = 0; i < states.size(); ++i) {
    Json p = Json::object();
    p["t"] = grid[i];
    p["state"] = matrix_to_json(states[i].matrix(), MatrixKind::State);
    points.push_back(std::move(p));
  }
  Json doc = Json::object();
  doc["points"] = std::move(points);
  return doc;
}

std::string flow_csv(const std::vector<double>& grid, const std::vector<StateDensity>& states) {
  std::ostringstream out;
  out << 't';
  const Eigen::Index n = states.empty() ? 0 : states.front().matrix().rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) out << ",re_" << r << c << ",im_" << r << c;
  }
  out << '\n';
  for (std::size_t i = 0; i < states.size(); ++i) {
    out << csv_number(grid[i]);
    const Operator& m = states[i].matrix();
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        out << ',' << csv_number(m(r, c).real()) << ',' << csv_number(m(r, c).imag());
      }
    }
    out << '\n';
  }
  return out.str();
}

TruncationConfig parse_truncation_config(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed configuration: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ConfigError, "configuration must be a JSON object");
  TruncationConfig config;
  config.spec0 = parse_spectrum(doc.value("spec0", Json()), "spec0");
  config.spec1 = parse_spectrum(doc.value("spec1", Json()), "spec1");
  if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty()) {
    throw Error(ErrorCode::ConfigError, "\"dims\" must be a nonempty array");
  }
  for (const Json& d : doc["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() <= 0) {
      throw Error(ErrorCode::ConfigError, "dimensions must be positive integers");
    }
    config.dims.push_back(d.get<std::size_t>());
  }
  if (doc.contains("ceiling")) {
    if (!doc["ceiling"].is_number() || !(doc["ceiling"].get<double>() > 0.0)) {
      throw Error(ErrorCode::ConfigError, "\"ceiling\" must be a positive number");
    }
    config.ceiling = doc["ceiling"].get<double>();
  }
  return config;
}

}  // namespace stategeom::io
