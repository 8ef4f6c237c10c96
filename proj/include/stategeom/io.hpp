#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stategeom/gns.hpp"
#include "stategeom/isotropy.hpp"
#include "stategeom/orbit_atlas.hpp"
#include "stategeom/tangent_flow.hpp"

namespace stategeom::io {

using Json = nlohmann::ordered_json;

enum class MatrixKind { Operator, State, Positive };

std::string_view kind_name(MatrixKind kind) noexcept;
MatrixKind parse_kind(std::string_view name);

/// On-disk matrix: {"n": n, "kind": "...", "entries": [[re, im], ...]} with
/// entries row-major. "kind" is optional.
struct MatrixFile {
  Operator matrix;
  std::optional<MatrixKind> kind;
};

/// Parses and shape-checks a matrix document (ParseError on any defect).
/// Kind-specific validation is left to the caller.
MatrixFile parse_matrix(std::string_view text);
MatrixFile matrix_from_json(const Json& doc);

Json matrix_to_json(const Operator& m, std::optional<MatrixKind> kind = {});

/// Canonical form: compact, fixed field order n, kind, entries, shortest
/// round-trip doubles, negative zero written as 0.0, trailing newline.
std::string dump_canonical(const Json& doc);
std::string format_matrix(const Operator& m, std::optional<MatrixKind> kind = {});

/// Fixed 17-significant-digit rendering used by every CSV writer.
std::string csv_number(double x);

Json certificate_to_json(const ConnectCertificate& cert, Action action);
Json isotropy_report_to_json(const IsotropyReport& report, Action action);
Json gns_to_json(const GnsTriple& triple, const GnsVerification* verification = nullptr);
Json recombination_to_json(const Recombination& r, double lambda);

/// Header n,C,opnorm,residual,flag; flag is "ok" or "diverged".
std::string truncation_csv(const TruncationReport& report);

Json truncation_to_json(const TruncationReport& report);
Json flow_to_json(const std::vector<double>& grid, const std::vector<StateDensity>& states);

/// Header t, then re_ij,im_ij for every entry in row-major order.
std::string flow_csv(const std::vector<double>& grid, const std::vector<StateDensity>& states);

struct TruncationConfig {
  SpectrumSpec spec0;
  SpectrumSpec spec1;
  std::vector<std::size_t> dims;
  double ceiling = 1e6;
};

/// {"spec0": {"kind": "gibbs", "ratio": 0.5}, "spec1": {...},
///  "dims": [2, 4, 8], "ceiling": 1e6}. Kinds: gibbs (ratio), uniform,
/// power (exponent). ConfigError on invalid content.
TruncationConfig parse_truncation_config(std::string_view text);

}  // namespace stategeom::io
