#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "linecut/adversarial.hpp"
#include "linecut/enclosure.hpp"
#include "linecut/error.hpp"
#include "linecut/io.hpp"
#include "linecut/render.hpp"
#include "linecut/solver.hpp"

using namespace linecut;

namespace {

constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;

bool g_decimal = false;

bool rational_text(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == s.size()) return false;
  try {
    parse_scalar(s);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

// Adds "<key>_decimal" next to every rational-valued member.
void add_decimals(Json& j) {
  if (j.is_array()) {
    for (auto& e : j) add_decimals(e);
    return;
  }
  if (!j.is_object()) return;
  Json out = Json::object();
  for (auto& [key, value] : j.items()) {
    add_decimals(value);
    out[key] = value;
    if (value.is_string() && rational_text(value.get<std::string>())) {
      out[key + "_decimal"] = to_double(parse_scalar(value.get<std::string>()));
    }
  }
  j = std::move(out);
}

void emit(const std::string& path, Json j) {
  if (g_decimal) add_decimals(j);
  if (path.empty() || path == "-") {
    std::cout << dump(j);
  } else {
    write_file_atomic(path, dump(j));
  }
}

LineFamily load_family(const std::string& path) { return family_from_json(parse_json(read_file(path))); }

std::optional<int> thread_cap() {
  const char* raw = std::getenv("LINECUT_THREADS");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1) throw CLI::ValidationError("LINECUT_THREADS", "must be a positive integer");
  return static_cast<int>(v);
}

void report_failures(const VerificationReport& report) {
  for (const auto& f : report.failures) {
    std::cerr << "leaf " << f.leaf << " (path " << (f.path.empty() ? "root" : f.path) << ")";
    if (!f.family.empty()) std::cerr << " family " << f.family;
    std::cerr << ": " << f.reason << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equitable convex partitions for two families of lines"};
  app.require_subcommand(1);
  app.add_flag("--decimal", g_decimal, "Add display-only decimal fields to JSON output");
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Print progress to stderr");

  // gen-random
  auto* gen_random = app.add_subcommand("gen-random", "Random family in general position");
  int n = 0;
  std::uint64_t seed = 1;
  std::string name = "A";
  std::string out;
  gen_random->add_option("--n", n, "Number of lines")->required()->check(CLI::NonNegativeNumber);
  gen_random->add_option("--seed", seed, "Random seed");
  gen_random->add_option("--name", name, "Family name");
  gen_random->add_option("--out", out, "Output file (default stdout)");

  // gen-hard
  auto* gen_hard = app.add_subcommand("gen-hard", "Strip-hard family on the lattice [a]^r");
  int a = 1;
  int r = 1;
  std::string params_out;
  std::size_t size_cap = 4096;
  gen_hard->add_option("--a", a, "Lattice side")->required()->check(CLI::PositiveNumber);
  gen_hard->add_option("--r", r, "Number of parts")->required()->check(CLI::PositiveNumber);
  gen_hard->add_option("--seed", seed, "Perturbation seed");
  gen_hard->add_option("--out", out, "Family output file (default stdout)");
  gen_hard->add_option("--params", params_out, "Params sidecar (default <out>.params.json)");
  gen_hard->add_option("--size-cap", size_cap, "Maximum a^r");

  // gen-pair
  auto* gen_pair = app.add_subcommand("gen-pair", "Hard family plus a remote near-concurrent family");
  std::string height_text;
  std::string out_a;
  std::string out_b;
  gen_pair->add_option("--a", a, "Lattice side")->required()->check(CLI::PositiveNumber);
  gen_pair->add_option("--r", r, "Number of parts")->required()->check(CLI::PositiveNumber);
  gen_pair->add_option("--height", height_text, "Placement height above I(A), rational")->required();
  gen_pair->add_option("--seed", seed, "Perturbation seed");
  gen_pair->add_option("--out-a", out_a, "Output file for A")->required();
  gen_pair->add_option("--out-b", out_b, "Output file for B")->required();
  gen_pair->add_option("--params", params_out, "Params and diagnostics sidecar (default <out-a>.params.json)");
  gen_pair->add_option("--size-cap", size_cap, "Maximum a^r");

  // partition
  auto* part = app.add_subcommand("partition", "Compute a certified partition");
  std::string file_a;
  std::string file_b;
  std::string config_file;
  part->add_option("--a", file_a, "Family A")->required()->check(CLI::ExistingFile);
  part->add_option("--b", file_b, "Family B")->required()->check(CLI::ExistingFile);
  part->add_option("--r", r, "Number of parts")->required()->check(CLI::PositiveNumber);
  part->add_option("--seed", seed, "Seed recorded in the certificate");
  part->add_option("--config", config_file, "Solver config JSON")->check(CLI::ExistingFile);
  part->add_option("--out", out, "Certificate output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Check a certificate against its families");
  std::string cert_file;
  std::string report_out;
  verify->add_option("--cert", cert_file, "Certificate")->required()->check(CLI::ExistingFile);
  verify->add_option("--a", file_a, "Family A")->required()->check(CLI::ExistingFile);
  verify->add_option("--b", file_b, "Family B")->required()->check(CLI::ExistingFile);
  verify->add_option("--report", report_out, "Write the verification report here");

  // mu
  auto* mu = app.add_subcommand("mu", "Enclosure measure of a family in a region");
  std::string family_file;
  std::string region_file;
  bool exact = false;
  bool fast = false;
  std::uint64_t node_limit = 0;
  mu->add_option("--family", family_file, "Family")->required()->check(CLI::ExistingFile);
  mu->add_option("--region", region_file, "Region")->required()->check(CLI::ExistingFile);
  auto* exact_flag = mu->add_flag("--exact", exact, "Clique search (default)");
  mu->add_flag("--fast", fast, "Half-plane algorithm; the region must be one half-plane")->excludes(exact_flag);
  mu->add_option("--node-limit", node_limit, "Clique search node budget (0 = unlimited)");
  mu->add_option("--out", out, "Output file (default stdout)");

  // render
  auto* render = app.add_subcommand("render", "SVG drawing of a certificate");
  int width = 800;
  render->add_option("--cert", cert_file, "Certificate")->required()->check(CLI::ExistingFile);
  render->add_option("--out", out, "SVG output file")->required();
  render->add_option("--width", width, "Image width in pixels")->check(CLI::Range(50, 20000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const auto threads = thread_cap();
    if (verbose && threads) std::cerr << "thread cap " << *threads << "\n";

    if (*gen_random) {
      emit(out, to_json(random_family(n, seed, name)));
      return 0;
    }
    if (*gen_hard) {
      BuildOptions options;
      options.seed = seed;
      options.size_cap = size_cap;
      const auto inst = build_hard_family(a, r, options);
      emit(out, to_json(inst.a));
      const std::string sidecar = !params_out.empty() ? params_out
                                  : (!out.empty() && out != "-") ? out + ".params.json"
                                                                 : std::string();
      if (!sidecar.empty()) emit(sidecar, to_json(inst.params));
      return 0;
    }
    if (*gen_pair) {
      const Scalar h = parse_scalar(height_text);
      if (h <= 0) throw CLI::ValidationError("--height", "must be positive");
      BuildOptions options;
      options.seed = seed;
      options.size_cap = size_cap;
      const auto inst = build_two_family_instance(a, r, h, options);
      emit(out_a, to_json(inst.hard.a));
      emit(out_b, to_json(inst.b));
      Json sidecar = to_json(inst.hard.params);
      sidecar["height"] = to_json(inst.height);
      sidecar["top_of_a"] = to_json(inst.top_of_a);
      sidecar["disk_center"] = to_json(inst.center);
      sidecar["disk_radius"] = inst.disk_radius;
      emit(params_out.empty() ? out_a + ".params.json" : params_out, sidecar);
      std::cerr << "disk radius " << inst.disk_radius << ", separation height " << to_double(h) << "\n";
      return 0;
    }
    if (*part) {
      SolverConfig config;
      if (!config_file.empty()) config = solver_config_from_json(parse_json(read_file(config_file)));
      config.seed = seed;
      const LineFamily fa = load_family(file_a);
      const LineFamily fb = load_family(file_b);
      const auto cert = partition(fa, fb, r, config);
      const auto report = verify_certificate(fa, fb, cert);
      emit(out, to_json(cert));
      if (verbose) std::cerr << report.leaves << " leaves" << (cert.degraded ? ", degraded" : "") << "\n";
      if (!report.ok) {
        report_failures(report);
        return kVerifyFailed;
      }
      return 0;
    }
    if (*verify) {
      const auto cert = certificate_from_json(parse_json(read_file(cert_file)));
      const auto report = verify_certificate(load_family(file_a), load_family(file_b), cert);
      if (!report_out.empty()) emit(report_out, to_json(report));
      if (!report.ok) {
        report_failures(report);
        return kVerifyFailed;
      }
      std::cout << "ok: " << report.leaves << " leaves"
                << (report.degraded ? " (degraded)" : "") << (report.bound_met ? "" : ", bound not met")
                << "\n";
      return 0;
    }
    if (*mu) {
      const LineFamily f = load_family(family_file);
      const Region region = region_from_json(parse_json(read_file(region_file)));
      MuResult result;
      if (fast) {
        if (!region.convex() || region.pieces[0].halfplanes.size() != 1) {
          throw CLI::ValidationError("--fast", "needs a region that is a single half-plane");
        }
        result = mu_halfplane(f, region.pieces[0].halfplanes[0]);
      } else {
        result = mu_exact(f, region, std::nullopt, node_limit);
      }
      Json j;
      j["mu"] = result.size;
      j["exact"] = result.exact;
      j["method"] = fast ? "halfplane" : "clique";
      j["witness"] = to_json(result.witness);
      emit(out, j);
      return 0;
    }
    if (*render) {
      const auto cert = certificate_from_json(parse_json(read_file(cert_file)));
      RenderOptions options;
      options.width = width;
      write_file_atomic(out, render_svg(cert, options));
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
