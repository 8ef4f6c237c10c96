// stategeom command-line front end. Everything numerical goes through the C
// API in stategeom.h; this file only parses arguments, reads files and maps
// status codes to exit codes:
//   0 success, 1 usage or I/O error, 2 validation error, 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stategeom/stategeom.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct ContextDeleter {
  void operator()(sg_context* ctx) const { sg_context_destroy(ctx); }
};
struct MatrixDeleter {
  void operator()(sg_matrix* m) const { sg_matrix_destroy(m); }
};
using ContextPtr = std::unique_ptr<sg_context, ContextDeleter>;
using MatrixPtr = std::unique_ptr<sg_matrix, MatrixDeleter>;

// Unwinds to main with a ready exit code after printing the diagnostic.
struct Exit {
  int code;
};

[[noreturn]] void fail_usage(const std::string& message) {
  std::cerr << "stategeom: " << message << '\n';
  throw Exit{kExitUsage};
}

void check(sg_context* ctx, sg_status status) {
  if (status == SG_OK) return;
  std::cerr << "stategeom: " << sg_status_name(status) << ": " << sg_context_last_error(ctx)
            << '\n';
  if (status == SG_ERR_INVALID_ARGUMENT || status == SG_ERR_INTERNAL) throw Exit{kExitUsage};
  throw Exit{sg_status_is_numerical(status) ? kExitNumerical : kExitValidation};
}

std::string take_string(char* s) {
  std::string out(s);
  sg_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_usage("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

MatrixPtr load_matrix(sg_context* ctx, const std::string& path) {
  const std::string text = read_file(path);
  sg_matrix* m = nullptr;
  const sg_status status = sg_matrix_from_json(ctx, text.c_str(), &m);
  if (status != SG_OK) {
    std::cerr << "stategeom: " << path << '\n';
    check(ctx, status);
  }
  return MatrixPtr(m);
}

sg_action parse_action(const std::string& name) {
  if (name == "alpha") return SG_ACTION_ALPHA;
  if (name == "phi") return SG_ACTION_PHI;
  fail_usage("action must be alpha or phi");
}

struct Globals {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
};

void emit(const Globals& globals, const std::string& text) {
  if (globals.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(globals.out, std::ios::binary);
  if (!file) fail_usage("cannot write " + globals.out);
  file << text;
}

sg_format output_format(const Globals& globals, sg_format fallback, bool csv_allowed) {
  if (globals.format.empty()) return fallback;
  if (globals.format == "json") return SG_FORMAT_JSON;
  if (globals.format == "csv" && csv_allowed) return SG_FORMAT_CSV;
  fail_usage("format " + globals.format + " is not available for this command");
}

double tolerance_scale(const Globals& globals) {
  if (globals.tol) return *globals.tol;
  if (const char* env = std::getenv("STATEGEOM_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0') fail_usage("STATEGEOM_TOL is not a number");
    return value;
  }
  return 1.0;
}

// "gibbs:0.5", "power:2", "uniform".
nlohmann::json spectrum_arg(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  nlohmann::json spec = {{"kind", kind}};
  if (kind == "uniform") return spec;
  if (colon == std::string::npos) fail_usage("spectrum " + text + " needs a parameter, e.g. gibbs:0.5");
  double value = 0.0;
  try {
    value = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    fail_usage("bad spectrum parameter in " + text);
  }
  spec[kind == "power" ? "exponent" : "ratio"] = value;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group actions on density matrices: orbits, isotropy, tangents, GNS"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--tol", globals.tol, "Uniform multiplier on every tolerance (env STATEGEOM_TOL)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", globals.seed, "Seed for randomized commands");
  app.add_option("--out", globals.out, "Write output to this file instead of stdout");
  app.add_option("--format", globals.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string file, file0, file1, g_file, gen_file, action = "phi", kind_name;
  std::string config_file, spec0 = "gibbs:0.5", spec1 = "gibbs:0.5", sample_kind = "state";
  std::vector<std::size_t> dims;
  double h = 1e-5, t0 = 0.0, t1 = 1.0, lambda = 0.5, ceiling = 1e6;
  std::size_t steps = 10, n = 2, rank = 0;
  bool verify = false;

  auto* validate = app.add_subcommand("validate", "Validate a matrix file and report its spectrum");
  validate->add_option("file", file, "Matrix file")->required();
  validate->add_option("--kind", kind_name, "Validate as operator, state or positive")
      ->check(CLI::IsMember({"operator", "state", "positive"}));

  auto* act = app.add_subcommand("act", "Apply alpha (g x g^dagger) or phi (normalized) action");
  act->add_option("action", action, "alpha or phi")->required();
  act->add_option("g", g_file, "Group element file")->required();
  act->add_option("target", file, "Functional or state file")->required();

  auto* connect = app.add_subcommand("connect", "Build the connecting element between two functionals");
  connect->add_option("action", action, "alpha or phi")->required();
  connect->add_option("from", file0, "Source file")->required();
  connect->add_option("to", file1, "Target file")->required();

  auto* isotropy = app.add_subcommand("isotropy", "Isotropy algebra dimensions and residuals");
  isotropy->add_option("file", file, "Positive functional or state file")->required();
  isotropy->add_option("--action", action, "alpha or phi");

  auto* tangent = app.add_subcommand("tangent", "Tangent vector of a generator, with FD check");
  tangent->add_option("file", file, "Base state file")->required();
  tangent->add_option("generator", gen_file, "Generator file")->required();
  tangent->add_option("--action", action, "alpha or phi");
  tangent->add_option("--step", h, "Central-difference step")->check(CLI::PositiveNumber);

  auto* flow = app.add_subcommand("flow", "Trajectory phi(exp(t a), rho0)");
  flow->add_option("file", file, "Initial state file")->required();
  flow->add_option("generator", gen_file, "Generator file")->required();
  flow->add_option("--t0", t0, "Start time");
  flow->add_option("--t1", t1, "End time");
  flow->add_option("--steps", steps, "Number of grid intervals");

  auto* gns = app.add_subcommand("gns", "GNS triple of a state");
  gns->add_option("file", file, "State file")->required();
  gns->add_flag("--verify", verify, "Sample the product law (requires --seed)");

  auto* truncate = app.add_subcommand("truncate", "Truncation sweep of connecting constants");
  truncate->add_option("config", config_file, "JSON configuration file");
  truncate->add_option("--spec0", spec0, "Source spectrum, e.g. gibbs:0.5");
  truncate->add_option("--spec1", spec1, "Target spectrum");
  truncate->add_option("--dims", dims, "Dimensions")->delimiter(',');
  truncate->add_option("--ceiling", ceiling, "Divergence ceiling for C")->check(CLI::PositiveNumber);

  auto* recombine = app.add_subcommand("recombine", "Convex recombination on a tracial orbit");
  recombine->add_option("tau", file, "Tracial state file")->required();
  recombine->add_option("g1", file0, "First group element")->required();
  recombine->add_option("g2", file1, "Second group element")->required();
  recombine->add_option("--lambda", lambda, "Mixing weight")->check(CLI::Range(0.0, 1.0));

  auto* sample = app.add_subcommand("sample", "Seeded random matrix (requires --seed)");
  sample->add_option("--kind", sample_kind, "state, invertible, unitary or hermitian")
      ->check(CLI::IsMember({"state", "invertible", "unitary", "hermitian"}));
  sample->add_option("--n", n, "Dimension")->check(CLI::PositiveNumber);
  sample->add_option("--rank", rank, "Rank for states (default n)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    sg_context* raw = nullptr;
    if (sg_context_create(&raw) != SG_OK) fail_usage("cannot create context");
    ContextPtr ctx(raw);
    check(ctx.get(), sg_context_set_tolerance_scale(ctx.get(), tolerance_scale(globals)));
    sg_context* c = ctx.get();
    char* text = nullptr;
    if (!*flow && !*truncate) output_format(globals, SG_FORMAT_JSON, false);

    if (*validate) {
      MatrixPtr m = load_matrix(c, file);
      const sg_kind kind = kind_name.empty()      ? sg_matrix_kind(m.get())
                           : kind_name == "state" ? SG_KIND_STATE
                           : kind_name == "positive" ? SG_KIND_POSITIVE
                                                     : SG_KIND_OPERATOR;
      check(c, sg_validate(c, m.get(), kind, &text));
      emit(globals, take_string(text));
    } else if (*act) {
      const sg_action which = parse_action(action);
      MatrixPtr g = load_matrix(c, g_file);
      MatrixPtr x = load_matrix(c, file);
      sg_matrix* result = nullptr;
      check(c, sg_act(c, which, g.get(), x.get(), &result));
      MatrixPtr owned(result);
      check(c, sg_matrix_to_json(c, owned.get(), &text));
      emit(globals, take_string(text));
    } else if (*connect) {
      const sg_action which = parse_action(action);
      MatrixPtr m0 = load_matrix(c, file0);
      MatrixPtr m1 = load_matrix(c, file1);
      check(c, sg_connect(c, which, m0.get(), m1.get(), &text));
      emit(globals, take_string(text));
    } else if (*isotropy) {
      const sg_action which = parse_action(action);
      MatrixPtr m = load_matrix(c, file);
      check(c, sg_isotropy(c, which, m.get(), &text));
      emit(globals, take_string(text));
    } else if (*tangent) {
      const sg_action which = parse_action(action);
      MatrixPtr base = load_matrix(c, file);
      MatrixPtr gen = load_matrix(c, gen_file);
      sg_matrix* value = nullptr;
      check(c, sg_tangent(c, which, base.get(), gen.get(), h, &value, &text));
      sg_matrix_destroy(value);
      emit(globals, take_string(text));
    } else if (*flow) {
      const sg_format format = output_format(globals, SG_FORMAT_CSV, true);
      MatrixPtr state = load_matrix(c, file);
      MatrixPtr gen = load_matrix(c, gen_file);
      check(c, sg_flow(c, state.get(), gen.get(), t0, t1, steps, format, &text));
      emit(globals, take_string(text));
    } else if (*gns) {
      if (verify && !globals.seed) fail_usage("gns --verify samples random products; pass --seed");
      MatrixPtr state = load_matrix(c, file);
      check(c, sg_gns(c, state.get(), verify ? 1 : 0, globals.seed.value_or(0), &text));
      emit(globals, take_string(text));
    } else if (*truncate) {
      const sg_format format = output_format(globals, SG_FORMAT_CSV, true);
      std::string config;
      if (!config_file.empty()) {
        config = read_file(config_file);
      } else {
        if (dims.empty()) fail_usage("truncate needs a config file or --dims");
        const nlohmann::json doc = {{"spec0", spectrum_arg(spec0)},
                                    {"spec1", spectrum_arg(spec1)},
                                    {"dims", dims},
                                    {"ceiling", ceiling}};
        config = doc.dump();
      }
      check(c, sg_truncate(c, config.c_str(), format, &text));
      emit(globals, take_string(text));
    } else if (*recombine) {
      MatrixPtr tau = load_matrix(c, file);
      MatrixPtr g1 = load_matrix(c, file0);
      MatrixPtr g2 = load_matrix(c, file1);
      check(c, sg_recombine(c, tau.get(), g1.get(), g2.get(), lambda, &text));
      emit(globals, take_string(text));
    } else if (*sample) {
      if (!globals.seed) fail_usage("sample is randomized; pass --seed");
      sg_matrix* result = nullptr;
      check(c, sg_sample(c, sample_kind.c_str(), n, rank, *globals.seed, &result));
      MatrixPtr owned(result);
      check(c, sg_matrix_to_json(c, owned.get(), &text));
      emit(globals, take_string(text));
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return 0;
}
