#include "pairframe/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pairframe/error.hpp"
#include "pairframe/frame.hpp"
#include "pairframe/frame_file.hpp"
#include "pairframe/generators.hpp"
#include "pairframe/neumann.hpp"
#include "pairframe/pair.hpp"
#include "pairframe/random.hpp"
#include "pairframe/spectral.hpp"

namespace pairframe::cli {
namespace {

using nlohmann::json;

struct GlobalOptions {
  std::optional<double> tol;
  std::string format = "text";
  int theta_steps = kThetaSteps;

  bool json_mode() const { return format == "json"; }
};

// Values at rounding-noise level relative to scale print as 0 in text mode.
std::string format_noise(double x, double scale) {
  constexpr double kNoise = 64.0 * std::numeric_limits<double>::epsilon();
  if (std::abs(x) <= kNoise * std::max(1.0, std::abs(scale))) return "0";
  return format6(x);
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format6(z.real());
  if (z.real() == 0.0) return format6(z.imag()) + "i";
  const std::string im = format6(z.imag());
  return format6(z.real()) + (im.front() == '-' ? "" : "+") + im + "i";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json envelope(const char* command) {
  json j = json::object();
  j["format_version"] = std::string(kFormatVersion);
  j["command"] = command;
  return j;
}

// Like dump(2), but arrays without nested objects stay on one line when short.
void write_json(std::ostream& out, const json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * depth + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    std::size_t k = 0;
    for (const auto& [key, value] : j.items()) {
      out << inner << json(key).dump() << ": ";
      write_json(out, value, depth + 1);
      out << (++k < j.size() ? ",\n" : "\n");
    }
    out << pad << "}";
    return;
  }
  if (j.is_array()) {
    const std::string flat = j.dump();
    const bool has_object = std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_object(); });
    if (!has_object && flat.size() <= 96) {
      out << flat;
      return;
    }
    out << "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out << inner;
      write_json(out, j[k], depth + 1);
      out << (k + 1 < j.size() ? ",\n" : "\n");
    }
    out << pad << "]";
    return;
  }
  out << j.dump();
}

void emit_json(std::ostream& out, const json& j) {
  write_json(out, j, 0);
  out << "\n";
}

int cmd_frame_analyze(const std::string& path, const GlobalOptions& opt, std::ostream& out) {
  const FrameFile file = read_frame_file(path);
  const double tol = opt.tol.value_or(kFrameTol);
  const ClassificationReport r = classify(file.lambda, tol);
  const double b = r.bounds.upper;

  if (opt.json_mode()) {
    json j = envelope("frame analyze");
    j["dim"] = file.dim();
    j["members"] = file.lambda.size();
    j["total_rows"] = file.lambda.total_rows();
    j["tol"] = tol;
    j["is_bessel"] = r.is_bessel;
    j["is_frame"] = r.is_frame;
    j["tight"] = r.is_tight();
    j["bounds"] = {{"lower", r.bounds.lower}, {"upper", r.bounds.upper}};
    j["alpha_star"] = r.alpha_star ? complex_to_json(*r.alpha_star) : json(nullptr);
    j["residual"] = nullable(r.residual);
    j["residual_below_one"] = r.residual_below_one;
    j["invertible"] = r.cert_invertible;
    j["surjective"] = r.cert_surjective;
    emit_json(out, j);
    return kOk;
  }

  out << "family: " << file.lambda.size() << " members, dim " << file.dim() << ", total rows "
      << file.lambda.total_rows() << "\n";
  if (r.is_frame) {
    out << "frame: yes, A=" << format6(r.bounds.lower) << ", B=" << format6(b) << (r.is_tight() ? ", tight" : "")
        << "\n";
  } else {
    out << "frame: no, Bessel: yes, A=" << format_noise(r.bounds.lower, b) << ", B=" << format6(b) << "\n";
  }
  if (r.alpha_star) {
    out << "alpha*=" << format_complex(*r.alpha_star) << ", residual=" << format_noise(*r.residual, 1.0)
        << (r.residual_below_one ? " (< 1)" : " (not < 1)") << "\n";
  } else {
    out << "alpha*: none (zero frame operator)\n";
  }
  out << "invertible: " << yes_no(r.cert_invertible) << "\n";
  out << "surjective: " << yes_no(r.cert_surjective) << "\n";
  return kOk;
}

int cmd_pair_analyze(const std::string& path, bool want_dual, const GlobalOptions& opt, std::ostream& out,
                     std::ostream& err) {
  const FrameFile file = read_frame_file(path);
  const double tol = opt.tol.value_or(kPairTol);
  const bool gamma_defaulted = !file.gamma;
  if (gamma_defaulted) err << "notice: no gamma family in " << path << "; using gamma = lambda\n";
  const PairSystem sys = file.pair_system();
  const PairReport r = classify_pair(sys, tol, opt.theta_steps);
  const NearIdentityReport ni = find_alpha(r.S);
  const bool hermitian = is_hermitian(r.S);

  std::optional<double> dual_residual;
  if (want_dual) {
    if (!r.is_pair_frame) throw Error(ErrorCode::Singular, "pair operator is not invertible; no dual pair");
    const Eigen::Index n = sys.ambient_dim();
    const PairSystem dual = compose(sys, CMatrix::Identity(n, n), invert(r.S, tol));
    dual_residual = op_norm(pair_operator(dual) - CMatrix::Identity(n, n));
  }

  if (opt.json_mode()) {
    json j = envelope("pair analyze");
    j["dim"] = sys.ambient_dim();
    j["members"] = sys.size();
    j["gamma_defaulted"] = gamma_defaulted;
    j["weights_sup_norm"] = sys.weights().sup_norm();
    j["tol"] = tol;
    j["theta_steps"] = opt.theta_steps;
    j["S"] = {{"matrix", matrix_to_json(r.S)},
              {"op_norm", r.op_norm},
              {"sigma_min", r.sigma_min},
              {"hermitian", hermitian}};
    j["is_pair_frame"] = r.is_pair_frame;
    j["condition_number"] = nullable(r.condition_number);
    j["framelike"] = {{"lower", r.framelike_lower}, {"upper", r.framelike_upper}};
    j["adjoint_residual"] = r.adjoint_residual;
    j["near_identity"] = {{"alpha", complex_to_json(ni.alpha)},
                          {"residual", ni.residual},
                          {"is_near_identity", ni.is_near_identity},
                          {"is_positive_variant", ni.is_positive_variant}};
    if (dual_residual) j["dual"] = {{"identity_residual", *dual_residual}};
    emit_json(out, j);
    return kOk;
  }

  out << "system: " << sys.size() << " members, dim " << sys.ambient_dim()
      << (gamma_defaulted ? ", gamma = lambda" : "") << ", |m|_inf=" << format6(sys.weights().sup_norm()) << "\n";
  out << "S: " << r.S.rows() << "x" << r.S.cols() << ", |S|=" << format6(r.op_norm)
      << ", sigma_min=" << format_noise(r.sigma_min, r.op_norm) << ", hermitian: " << yes_no(hermitian) << "\n";
  if (r.is_pair_frame) {
    out << "pair frame: yes, condition number=" << format6(*r.condition_number) << "\n";
  } else {
    out << "pair frame: no\n";
  }
  out << "framelike A=" << format6(r.framelike_lower)
      << (r.framelike_lower == 0.0 && r.is_pair_frame ? " (lower bound not attained)" : "")
      << " B=" << format6(r.framelike_upper) << "\n";
  out << "adjoint residual: " << format_noise(r.adjoint_residual, r.op_norm) << "\n";
  if (ni.zero_operator) {
    out << "near identity: no (zero operator)\n";
  } else {
    out << "near identity: " << yes_no(ni.is_near_identity) << ", alpha=" << format_complex(ni.alpha)
        << ", residual=" << format_noise(ni.residual, 1.0) << (ni.is_positive_variant ? ", positive" : "") << "\n";
  }
  if (dual_residual) out << "dual pair: |S_dual - I|=" << format_noise(*dual_residual, 1.0) << "\n";
  return kOk;
}

int cmd_neumann(const std::string& path, const std::string& alpha_text, int n_max,
                const std::optional<std::string>& signal, const GlobalOptions& opt, std::ostream& out) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "--N must be non-negative");
  const FrameFile file = read_frame_file(path);
  const PairSystem sys = file.pair_system();
  const CMatrix s = pair_operator(sys);

  Complex alpha;
  const bool automatic = alpha_text == "auto";
  if (automatic) {
    const NearIdentityReport ni = find_alpha(s);
    if (!ni.is_near_identity) {
      throw Error(ErrorCode::Singular, "no alpha with |I - alpha S| < 1 (best residual " + format6(ni.residual) + ")");
    }
    alpha = ni.alpha;
  } else {
    const auto parsed = parse_complex(alpha_text);
    if (!parsed) throw Error(ErrorCode::Parse, "cannot parse --alpha '" + alpha_text + "'");
    if (*parsed == Complex(0.0, 0.0)) throw Error(ErrorCode::InvalidArgument, "--alpha must be nonzero");
    alpha = *parsed;
  }

  std::optional<CVector> f;
  if (signal) {
    const std::string prefix = "random:";
    if (signal->rfind(prefix, 0) == 0) {
      std::uint64_t seed = 0;
      try {
        std::size_t used = 0;
        seed = std::stoull(signal->substr(prefix.size()), &used);
        if (used != signal->size() - prefix.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "bad --signal seed in '" + *signal + "'");
      }
      Rng rng(seed);
      f = rng.complex_normal_vector(sys.ambient_dim());
    } else {
      std::ifstream in(*signal, std::ios::binary);
      if (!in) throw Error(ErrorCode::Parse, "cannot open signal file " + *signal);
      std::ostringstream ss;
      ss << in.rdbuf();
      f = parse_signal(ss.str());
    }
    if (f->size() != sys.ambient_dim()) {
      throw Error(ErrorCode::DimensionMismatch, "signal has length " + std::to_string(f->size()) + ", expected " +
                                                    std::to_string(sys.ambient_dim()));
    }
  }

  const NeumannTrace trace = neumann_trace(s, alpha, n_max);
  std::vector<double> rel_errors;
  if (f) {
    for (int k = 0; k <= n_max; ++k) rel_errors.push_back(reconstruct(sys, alpha, k, *f).rel_error);
  }

  if (opt.json_mode()) {
    json j = envelope("neumann");
    j["alpha"] = complex_to_json(alpha);
    j["alpha_mode"] = automatic ? "auto" : "explicit";
    j["residual"] = trace.residual;
    j["signal"] = signal ? json(*signal) : json(nullptr);
    json rows = json::array();
    for (std::size_t k = 0; k < trace.entries.size(); ++k) {
      const NeumannEntry& e = trace.entries[k];
      json row = {{"N", e.n}, {"error", e.error}, {"bound", e.bound}, {"telescoping_residual", e.telescoping_residual}};
      if (f) row["rel_error"] = rel_errors[k];
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    emit_json(out, j);
    return kOk;
  }

  out << "alpha=" << format_complex(alpha) << (automatic ? " (auto)" : "")
      << ", residual |I - alpha S|=" << format_noise(trace.residual, 1.0) << "\n";
  out << "N\terror\tbound" << (f ? "\trel_error" : "") << "\n";
  for (std::size_t k = 0; k < trace.entries.size(); ++k) {
    const NeumannEntry& e = trace.entries[k];
    out << e.n << "\t" << format_noise(e.error, 1.0) << "\t" << format_noise(e.bound, 1.0);
    if (f) out << "\t" << format_noise(rel_errors[k], 1.0);
    out << "\n";
  }
  return kOk;
}

int cmd_dual(const std::string& path, const GlobalOptions& opt, std::ostream& out) {
  const FrameFile file = read_frame_file(path);
  const double tol = opt.tol.value_or(kFrameTol);
  FrameFile dual{canonical_dual(file.lambda, tol), std::nullopt, std::nullopt};
  out << serialize_frame_file(dual);
  return kOk;
}

int cmd_gen(const std::string& kind_name, Eigen::Index dim, std::optional<Eigen::Index> count, std::uint64_t seed,
            const std::vector<double>& params, const std::optional<std::string>& out_path, std::ostream& out) {
  GenSpec spec;
  spec.kind = parse_gen_kind(kind_name);
  spec.dim = dim;
  spec.count = count.value_or(default_count(spec.kind, dim));
  spec.seed = seed;
  spec.params = params;

  FrameFile file{generate(spec), std::nullopt, std::nullopt};
  if (spec.kind == GenKind::Weighted) file.weights = generate_weights(spec);
  if (spec.kind == GenKind::SwapFixture) {
    GenSpec basis = spec;
    basis.kind = GenKind::Orthonormal;
    file.gamma = generate(basis);
  }

  const std::string text = serialize_frame_file(file);
  if (out_path) {
    std::ofstream f(*out_path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + *out_path);
    f << text;
  } else {
    out << text;
  }
  return kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidSpec:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NonFinite:
    case ErrorCode::InvalidExponent:
    case ErrorCode::ExponentMismatch:
      return kInvalidInput;
    case ErrorCode::DimensionMismatch:
      return kDimensionMismatch;
    case ErrorCode::NotAFrame:
    case ErrorCode::Singular:
      return kNotInvertible;
    default:
      return kInternal;
  }
}

}  // namespace

std::string format6(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::optional<Complex> parse_complex(std::string_view text) {
  static const std::regex number(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  static const std::regex full(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$)");
  static const std::regex imag_only(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$)");
  const std::string s(text);
  std::smatch m;
  try {
    if (std::regex_match(s, number)) return Complex(std::stod(s), 0.0);
    if (std::regex_match(s, m, full)) return Complex(std::stod(m[1].str()), std::stod(m[2].str()));
    if (std::regex_match(s, m, imag_only)) return Complex(0.0, std::stod(m[1].str()));
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frame, pair-frame and Neumann-series analysis of finite families of operators", "pairframe"};
  app.require_subcommand(1);

  GlobalOptions opt;
  double tol_value = 0.0;
  auto* tol_opt = app.add_option("--tol", tol_value, "Relative tolerance for frame / invertibility verdicts")
                      ->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--theta-steps", opt.theta_steps, "Angles in the numerical-range sweep")
      ->check(CLI::Range(8, 1 << 20));

  std::string path;

  auto* frame = app.add_subcommand("frame", "Frame / Bessel classification")->fallthrough();
  frame->require_subcommand(1);
  auto* frame_analyze = frame->add_subcommand("analyze", "Classify the lambda family of a frame file")->fallthrough();
  frame_analyze->add_option("path", path, "Frame file")->required();

  bool want_dual = false;
  auto* pair = app.add_subcommand("pair", "Pair-frame analysis")->fallthrough();
  pair->require_subcommand(1);
  auto* pair_analyze = pair->add_subcommand("analyze", "Analyze the multiplier operator of (m, gamma, lambda)")
                           ->fallthrough();
  pair_analyze->add_option("path", path, "Frame file")->required();
  pair_analyze->add_flag("--dual", want_dual, "Also build the dual pair (m, gamma, lambda S^-1); needs invertible S");

  std::string alpha_text = "auto";
  int n_max = 20;
  std::optional<std::string> signal;
  auto* neumann = app.add_subcommand("neumann", "Truncated Neumann-series decay table")->fallthrough();
  neumann->add_option("path", path, "Frame file")->required();
  neumann->add_option("--alpha", alpha_text, "Scalar alpha: auto, re, or re+imi");
  neumann->add_option("--N", n_max, "Largest truncation index");
  neumann->add_option("--signal", signal, "Signal file (JSON [[re, im], ...]) or random:<seed>");

  auto* dual = app.add_subcommand("dual", "Canonical dual frame as a frame file")->fallthrough();
  dual->add_option("path", path, "Frame file")->required();

  std::string kind;
  Eigen::Index dim = 2;
  std::optional<Eigen::Index> count;
  std::uint64_t seed = 0;
  std::vector<double> params;
  std::optional<std::string> out_path;
  auto* gen = app.add_subcommand("gen", "Write a generated fixture as a frame file")->fallthrough();
  std::string kinds_help = "Kind:";
  for (GenKind k : all_gen_kinds()) kinds_help += " " + std::string(to_string(k));
  gen->add_option("kind", kind, kinds_help)->required();
  gen->add_option("--dim", dim, "Ambient dimension")->check(CLI::PositiveNumber);
  gen->add_option("--count", count, "Member count (default depends on kind)")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "PRNG seed");
  gen->add_option("--param", params, "Kind-specific parameters (repeatable)");
  gen->add_option("--out", out_path, "Output path (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    app.exit(e, out, err);
    return kInvalidInput;
  }
  if (*tol_opt) opt.tol = tol_value;

  try {
    if (frame_analyze->parsed()) return cmd_frame_analyze(path, opt, out);
    if (pair_analyze->parsed()) return cmd_pair_analyze(path, want_dual, opt, out, err);
    if (neumann->parsed()) return cmd_neumann(path, alpha_text, n_max, signal, opt, out);
    if (dual->parsed()) return cmd_dual(path, opt, out);
    if (gen->parsed()) return cmd_gen(kind, dim, count, seed, params, out_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  err << app.help();
  return kInvalidInput;
}

}  // namespace pairframe::cli
