// troplog: JSON-in/JSON-out front end for the library.
//
// Every command prints {"status":"ok","payload":...} or
// {"status":"error","error":{"code":...,"message":...}} on stdout.

#include "troplog/error.hpp"
#include "troplog/json_io.hpp"
#include "troplog/moduli.hpp"
#include "troplog/pl_function.hpp"
#include "troplog/selfmap.hpp"
#include "troplog/subdivision.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using troplog::Error;
using troplog::ErrorCode;
using troplog::json_io::Json;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kDomain = 3,
  kLookup = 4,
  kFan = 5,
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return kUsage;
    case ErrorCode::InvalidInput:
    case ErrorCode::UnstableRange:
    case ErrorCode::NonZeroSum:
    case ErrorCode::LengthMismatch:
      return kDomain;
    case ErrorCode::NoSuchEdge:
    case ErrorCode::NoSuchLeg:
      return kLookup;
    case ErrorCode::IncompleteFan:
    case ErrorCode::UnsupportedDimension:
      return kFan;
  }
  return kInternal;
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json load(const std::string& path) {
  try {
    return troplog::json_io::parse_document(read_input(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

// "1,1,-2" -> (1, 1, -2). Use --sigma=-1,1 when the first entry is negative.
troplog::ContactOrder parse_sigma(const std::string& text) {
  troplog::ContactOrder sigma;
  if (text.empty()) return sigma;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorCode::ParseError, "bad contact order entry \"" + item + "\"");
    sigma.slopes.push_back(value);
  }
  return sigma;
}

std::vector<troplog::ContactOrder> parse_sigmas(const std::vector<std::string>& texts, int n, std::size_t wanted) {
  std::vector<troplog::ContactOrder> out;
  for (const auto& t : texts) out.push_back(parse_sigma(t));
  if (out.empty()) out.assign(std::max<std::size_t>(wanted, 1), troplog::ContactOrder{std::vector<troplog::Slope>(n, 0)});
  return out;
}

struct Options {
  std::uint64_t seed = 0;
  int jobs = 1;
  bool timing = false;

  std::string input;

  std::string sigma;
  std::vector<std::string> sigmas;
  std::optional<int> basepoint;
  std::string base_value = "c";

  int n = 0;
  std::string fan_file;
  std::optional<int> certify_leg;
  std::size_t check_samples = 0;

  std::int64_t r = 1;
  std::string a = "0";
  std::vector<std::string> compose;
};

Json cmd_validate(const Options& o) {
  const Json doc = load(o.input);
  if (doc.is_object() && doc.contains("dim")) {
    const troplog::Fan fan = troplog::json_io::fan_from_json(doc);
    Json payload = troplog::json_io::to_json(troplog::validate_fan(fan));
    payload["kind"] = "fan";
    return payload;
  }
  const troplog::Tree tree = troplog::json_io::tree_from_json(doc);
  Json payload = troplog::json_io::to_json(troplog::validate_tree(tree));
  payload["kind"] = "tree";
  return payload;
}

Json cmd_extend(const Options& o) {
  const troplog::Tree tree = troplog::json_io::tree_from_json(load(o.input));
  const troplog::ContactOrder sigma = parse_sigma(o.sigma);
  troplog::VertexId base = 0;
  if (o.basepoint) {
    base = *o.basepoint;
  } else if (sigma.size() == tree.legs.size() && !tree.legs.empty()) {
    base = tree.leg(1).at;
  } else if (!tree.vertices.empty()) {
    base = tree.vertices.front();
  }
  troplog::AffineExpr c;
  try {
    c = troplog::AffineExpr::parse(o.base_value);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, std::string("--c: ") + e.what());
  }
  return troplog::json_io::to_json(troplog::extend_from_leg_slopes(tree, sigma, base, c));
}

Json cmd_multidegree(const Options& o) {
  const troplog::PLFunction f = troplog::json_io::pl_function_from_json(load(o.input));
  const auto problems = troplog::validate_function(f);
  if (!problems.empty()) throw Error(ErrorCode::InvalidInput, problems.front());
  return troplog::json_io::to_json(troplog::multidegree(f));
}

Json subdivision_payload(const Options& o, const std::string& fan_file) {
  const troplog::Fan fan = troplog::json_io::fan_from_json(load(fan_file));
  const auto sigmas = parse_sigmas(o.sigmas, o.n, static_cast<std::size_t>(fan.dim));
  const auto result = troplog::subdivide_map_moduli(o.n, sigmas, fan, o.jobs);
  Json payload = troplog::json_io::to_json(result);
  if (o.check_samples > 0) {
    std::mt19937_64 rng(o.seed);
    Json cover = Json::array();
    bool all_ok = true;
    for (const auto& cone : result.complex.cones) {
      std::vector<troplog::SubdividedCell> cells;
      for (const auto& cell : result.cells)
        if (cell.parent == cone.type_key) cells.push_back(cell);
      const auto check = troplog::check_cover(cells, troplog::sample_cone_points(cone.cone, o.check_samples, rng));
      all_ok = all_ok && check.ok();
      cover.push_back(Json{{"cone", cone.type_key},
                           {"points", check.points},
                           {"uncovered", check.uncovered},
                           {"interior_overlaps", check.interior_overlaps}});
    }
    payload["cover_check"] = Json{{"seed", o.seed}, {"ok", all_ok}, {"cones", std::move(cover)}};
  }
  return payload;
}

Json cmd_moduli(const Options& o) {
  if (o.certify_leg) {
    const auto sigmas = parse_sigmas(o.sigmas, o.n, 1);
    if (sigmas.size() != 1)
      throw Error(ErrorCode::InvalidInput, "--certify-product takes a single contact order");
    return troplog::json_io::to_json(troplog::product_decomposition(o.n, sigmas.front(), *o.certify_leg, o.jobs));
  }
  if (!o.fan_file.empty()) return subdivision_payload(o, o.fan_file);
  return troplog::json_io::to_json(troplog::build_map_moduli(o.n, parse_sigmas(o.sigmas, o.n, 1), o.jobs));
}

Json cmd_subdivide(const Options& o) { return subdivision_payload(o, o.fan_file); }

troplog::SelfMapNormalForm read_self_map(std::int64_t r, const std::string& a) {
  troplog::AffineExpr t;
  try {
    t = troplog::AffineExpr::parse(a);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, "translation \"" + a + "\": " + e.what());
  }
  return troplog::classify_self_map(r, t);
}

Json cmd_selfmap(const Options& o) {
  troplog::SelfMapNormalForm form = read_self_map(o.r, o.a);
  if (!o.compose.empty()) {
    if (o.compose.size() != 2) throw Error(ErrorCode::ParseError, "--compose takes a degree and a translation");
    std::int64_t r2 = 0;
    std::size_t used = 0;
    try {
      r2 = std::stoll(o.compose[0], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != o.compose[0].size())
      throw Error(ErrorCode::ParseError, "--compose degree \"" + o.compose[0] + "\" is not an integer");
    form = troplog::compose(form, read_self_map(r2, o.compose[1]));
  }
  return troplog::json_io::to_json(form);
}

void emit(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical curves, balanced functions and moduli cones of maps to the log torus"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1, 1024));
  app.add_flag("--timing", o.timing, "Add wall-clock milliseconds to the result");

  auto* validate = app.add_subcommand("validate", "Check a tree or fan document");
  validate->add_option("file", o.input, "JSON file, or - for stdin")->required();

  auto* extend = app.add_subcommand("extend", "Balanced extension of leg slopes");
  extend->add_option("file", o.input, "Tree JSON file, or - for stdin")->required();
  extend->add_option("--sigma", o.sigma, "Leg slopes, e.g. 2,-1,-1")->required();
  extend->add_option("--basepoint", o.basepoint, "Vertex carrying the value c (default: leg 1's vertex)");
  extend->add_option("--c", o.base_value, "Value at the basepoint")->capture_default_str();

  auto* multideg = app.add_subcommand("multidegree", "Per-vertex degree of a PL function");
  multideg->add_option("file", o.input, "PL function JSON file, or - for stdin")->required();

  auto* moduli = app.add_subcommand("moduli", "Cone complex of tropical maps to the log torus");
  moduli->add_option("--n", o.n, "Number of legs")->required();
  moduli->add_option("--sigma", o.sigmas, "Contact orders; repeat once per target coordinate");
  moduli->add_option("--subdivide", o.fan_file, "Fan JSON to pull back");
  moduli->add_option("--certify-product", o.certify_leg, "Certify the product splitting at this leg");
  moduli->add_option("--check-samples", o.check_samples, "With --subdivide: sampled cover check per cone");

  auto* subdivide = app.add_subcommand("subdivide", "Fan-induced subdivision of the map moduli");
  subdivide->add_option("--n", o.n, "Number of legs")->required();
  subdivide->add_option("--sigma", o.sigmas, "Contact orders; repeat once per fan coordinate");
  subdivide->add_option("--fan", o.fan_file, "Fan JSON")->required();
  subdivide->add_option("--check-samples", o.check_samples, "Sampled cover check per cone");

  auto* selfmap = app.add_subcommand("selfmap", "Normal form of t -> r*t + a");
  selfmap->add_option("--r", o.r, "Degree")->required();
  selfmap->add_option("--a", o.a, "Translation")->capture_default_str();
  selfmap->add_option("--compose", o.compose, "Precompose with t -> r2*t + a2")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(Json{{"status", "error"}, {"error", {{"code", "ParseError"}, {"message", e.what()}}}});
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Json result;
  int code = kOk;
  try {
    Json payload;
    if (*validate)
      payload = cmd_validate(o);
    else if (*extend)
      payload = cmd_extend(o);
    else if (*multideg)
      payload = cmd_multidegree(o);
    else if (*moduli)
      payload = cmd_moduli(o);
    else if (*subdivide)
      payload = cmd_subdivide(o);
    else
      payload = cmd_selfmap(o);
    result = Json{{"status", "ok"}, {"payload", std::move(payload)}};
  } catch (const Error& e) {
    code = exit_code_for(e.code());
    result = Json{{"status", "error"}, {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
  } catch (const std::exception& e) {
    code = kInternal;
    result = Json{{"status", "error"}, {"error", {{"code", "Internal"}, {"message", e.what()}}}};
  }
  if (o.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    result["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
  }
  emit(result);
  return code;
}
