// homotopy-calc: pi_1, pi_2, Pic and Ext^0 computations from the command line.
//
// Exit codes: 0 success, 2 hypothesis gate failed, 3 invalid input,
// 4 internal cross-check disagreement.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "homcalc/catalog.hpp"
#include "homcalc/document.hpp"
#include "homcalc/error.hpp"
#include "homcalc/extcplx.hpp"
#include "homcalc/homotopy.hpp"

namespace fs = std::filesystem;
using homcalc::doc::json;

namespace {

constexpr int kOk = 0;
constexpr int kGateFailed = 2;
constexpr int kInvalidInput = 3;
constexpr int kCrossCheck = 4;

struct Options {
  std::string command;
  std::string input;
  std::string input_dir;
  std::string method = "auto";
  bool json = false;
  bool oracle = false;
  bool stable = false;
};

struct Outcome {
  int exit_code = kOk;
  json doc;
  std::string text;
};

int exit_code_for(homcalc::ErrorKind kind) {
  if (homcalc::is_gate_failure(kind)) return kGateFailed;
  if (kind == homcalc::ErrorKind::CrossCheckFailed) return kCrossCheck;
  return kInvalidInput;
}

std::string status_for(int code) {
  switch (code) {
    case kOk: return "ok";
    case kGateFailed: return "gate_failed";
    case kInvalidInput: return "invalid_input";
    default: return "cross_check_failed";
  }
}

homcalc::MethodChoice method_choice(const std::string& m) {
  if (m == "thm-main") return homcalc::MethodChoice::ThmMain;
  if (m == "thm-pi2") return homcalc::MethodChoice::ThmPi2;
  if (m == "both") return homcalc::MethodChoice::Both;
  return homcalc::MethodChoice::Auto;
}

json read_document(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw homcalc::Error(homcalc::ErrorKind::ParseError, path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw homcalc::Error(homcalc::ErrorKind::ParseError, path.filename().string() + ": " + e.what());
  }
}

void add_error(Outcome& out, const std::string& method, homcalc::ErrorKind kind, const std::string& message) {
  out.doc["errors"].push_back(homcalc::doc::error_to_json(method, kind, message));
}

// Command bodies fill `out.doc["results"]` and `out.text`.  Errors thrown
// from here abort the whole file.

void run_pi1(const Options& opt, const json& input, Outcome& out) {
  auto space = homcalc::doc::parse_space(input);
  auto r = homcalc::pi1(space, method_choice(opt.method));
  out.doc["results"]["pi1"] = homcalc::doc::result_to_json(r);
  out.text = r.group.pretty() + "\n";
}

void run_pi2(const Options&, const json& input, Outcome& out) {
  auto space = homcalc::doc::parse_space(input);
  auto r = homcalc::pi2(space);
  out.doc["results"]["pi2"] = homcalc::doc::result_to_json(r);
  out.text = r.group.pretty() + "\n";
}

homcalc::GroupDescriptor parse_g_only(const json& input) {
  if (input.is_object() && input.contains("embedding")) return homcalc::doc::parse_space(input).g;
  if (!input.is_object() || !input.contains("g"))
    throw homcalc::Error(homcalc::ErrorKind::ParseError, "/: missing field 'g'");
  auto g = homcalc::doc::parse_group(input["g"], "/g");
  if (!g.is_reductive()) throw homcalc::Error(homcalc::ErrorKind::ParseError, "/g: G must be reductive");
  return g;
}

void run_pic(const Options&, const json& input, Outcome& out) {
  auto g = parse_g_only(input);
  auto pic = homcalc::invariants(homcalc::pic_group(g));
  out.doc["results"]["pic_G"] = homcalc::doc::group_to_json(pic);
  out.text = pic.pretty() + "\n";
}

void run_pi1alg(const Options&, const json& input, Outcome& out) {
  auto g = parse_g_only(input);
  auto pg = homcalc::invariants(homcalc::pi1_alg(g));
  out.doc["results"]["pi1alg_G"] = homcalc::doc::group_to_json(pg);
  out.text = "pi1alg(G) = " + pg.pretty() + "\n";
  if (input.contains("embedding")) {
    auto space = homcalc::doc::parse_space(input);
    try {
      auto ph = homcalc::invariants(homcalc::pi1_alg(space.h));
      out.doc["results"]["pi1alg_H"] = homcalc::doc::group_to_json(ph);
      out.text += "pi1alg(H) = " + ph.pretty() + "\n";
    } catch (const homcalc::Error& e) {
      add_error(out, "pi1alg_H", e.kind(), e.detail());
      out.text += "pi1alg(H): " + std::string(e.what()) + "\n";
    }
  }
}

void run_ext0(const Options& opt, const json& input, Outcome& out) {
  auto K = homcalc::doc::parse_complex(input);
  const bool free_a0 = homcalc::invariants(K.a0()).torsion.empty();
  homcalc::InvariantFactors ext0;
  json r;
  if (free_a0) {
    ext0 = homcalc::invariants(homcalc::ext0_fiber_product(K));
    r = homcalc::doc::group_to_json(ext0);
    r["method"] = "fiber_product";
    if (opt.oracle) {
      auto oracle = homcalc::invariants(homcalc::ext0_resolution(K));
      r["oracle"] = "resolution";
      if (oracle != ext0)
        throw homcalc::Error(homcalc::ErrorKind::CrossCheckFailed,
                             "fiber product gives " + ext0.pretty() + ", resolution gives " + oracle.pretty());
    }
  } else {
    ext0 = homcalc::invariants(homcalc::ext0_resolution(K));
    r = homcalc::doc::group_to_json(ext0);
    r["method"] = "resolution";
  }
  out.doc["results"]["ext0"] = std::move(r);
  out.text = ext0.pretty() + "\n";
}

void run_all(const Options&, const json& input, Outcome& out) {
  auto space = homcalc::doc::parse_space(input);
  auto all = homcalc::compute_all(space);
  std::ostringstream text;
  if (all.pi1) {
    out.doc["results"]["pi1"] = homcalc::doc::result_to_json(*all.pi1);
    text << "pi1 = " << all.pi1->group.pretty() << "  [" << homcalc::to_string(all.pi1->method) << "]\n";
  }
  if (all.pi2) {
    out.doc["results"]["pi2"] = homcalc::doc::result_to_json(*all.pi2);
    text << "pi2 = " << all.pi2->group.pretty() << "\n";
  }
  auto pic = homcalc::invariants(homcalc::pic_group(space.g));
  out.doc["results"]["pic_G"] = homcalc::doc::group_to_json(pic);
  text << "Pic(G) = " << pic.pretty() << "\n";
  for (const auto& f : all.failures) {
    add_error(out, f.method, f.kind, f.message);
    text << f.method << ": " << homcalc::to_string(f.kind) << ": " << f.message << "\n";
  }
  if (!all.pi1 && !all.pi2 && !all.failures.empty()) out.exit_code = exit_code_for(all.failures.front().kind);
  out.text = text.str();
}

void run_catalog_list(Outcome& out) {
  json families = json::array();
  std::ostringstream text;
  for (const auto& f : homcalc::catalog::families()) {
    families.push_back(json{{"name", f.name}, {"params", f.params}, {"description", f.description}});
    text << f.name << "  (" << f.params << ")  " << f.description << "\n";
  }
  json embeddings = json::array({"maximal_torus", "block", "center_mu", "subtorus", "det_kernel",
                                 "diagonal_torus_in", "trivial"});
  text << "embeddings: maximal_torus, block, center_mu, subtorus, det_kernel, diagonal_torus_in, trivial\n";
  out.doc["results"]["families"] = std::move(families);
  out.doc["results"]["embeddings"] = std::move(embeddings);
  out.text = text.str();
}

Outcome run_one(const Options& opt, const fs::path* path) {
  Outcome out;
  out.doc = json{{"command", opt.command}, {"results", json::object()}, {"errors", json::array()}};
  if (path) out.doc["input"] = path->filename().string();

  auto start = std::chrono::steady_clock::now();
  try {
    if (opt.command == "catalog-list") {
      run_catalog_list(out);
    } else {
      json input = read_document(*path);
      if (opt.command == "pi1") run_pi1(opt, input, out);
      else if (opt.command == "pi2") run_pi2(opt, input, out);
      else if (opt.command == "pic") run_pic(opt, input, out);
      else if (opt.command == "pi1alg") run_pi1alg(opt, input, out);
      else if (opt.command == "ext0") run_ext0(opt, input, out);
      else if (opt.command == "all") run_all(opt, input, out);
    }
  } catch (const homcalc::Error& e) {
    out.exit_code = exit_code_for(e.kind());
    add_error(out, "", e.kind(), e.detail());
    out.text = std::string(e.what()) + "\n";
  } catch (const std::exception& e) {
    out.exit_code = kCrossCheck;
    add_error(out, "", homcalc::ErrorKind::CrossCheckFailed, std::string("internal error: ") + e.what());
    out.text = std::string("internal error: ") + e.what() + "\n";
  }
  auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

  out.doc["exit_code"] = out.exit_code;
  out.doc["status"] = status_for(out.exit_code);
  if (!opt.stable) out.doc["timing_ms"] = elapsed.count();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Homotopy groups of homogeneous spaces of linear algebraic groups"};
  app.add_option("command", opt.command, "pi1 | pi2 | pic | pi1alg | ext0 | all | catalog-list")
      ->required()
      ->check(CLI::IsMember({"pi1", "pi2", "pic", "pi1alg", "ext0", "all", "catalog-list"}));
  auto* in = app.add_option("--input", opt.input, "input JSON document");
  auto* dir = app.add_option("--input-dir", opt.input_dir, "process every *.json file in a directory");
  in->excludes(dir);
  app.add_flag("--json", opt.json, "write the machine-readable output document");
  app.add_option("--method", opt.method, "pi1 route: auto | thm-main | thm-pi2 | both")
      ->check(CLI::IsMember({"auto", "thm-main", "thm-pi2", "both"}));
  app.add_flag("--oracle", opt.oracle, "also run the free-resolution Ext^0 route and require agreement");
  app.add_flag("--stable", opt.stable, "omit timing so that output is byte-reproducible");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInvalidInput;
  }

  std::vector<fs::path> files;
  if (opt.command != "catalog-list") {
    if (!opt.input.empty()) {
      files.push_back(opt.input);
    } else if (!opt.input_dir.empty()) {
      std::error_code ec;
      for (const auto& entry : fs::directory_iterator(opt.input_dir, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
      if (ec) {
        std::cerr << "cannot read directory " << opt.input_dir << ": " << ec.message() << "\n";
        return kInvalidInput;
      }
      std::sort(files.begin(), files.end());
    } else {
      std::cerr << "command '" << opt.command << "' requires --input or --input-dir\n";
      return kInvalidInput;
    }
  }

  std::vector<Outcome> outcomes;
  if (files.empty() && opt.command == "catalog-list") outcomes.push_back(run_one(opt, nullptr));
  for (const auto& f : files) outcomes.push_back(run_one(opt, &f));

  int code = kOk;
  for (const auto& o : outcomes) code = std::max(code, o.exit_code);

  const bool batch = !opt.input_dir.empty();
  if (opt.json) {
    if (batch) {
      json all = json::array();
      for (auto& o : outcomes) all.push_back(std::move(o.doc));
      std::cout << all.dump(2) << "\n";
    } else {
      std::cout << outcomes.front().doc.dump(2) << "\n";
    }
  } else {
    for (const auto& o : outcomes) {
      if (batch) std::cout << "== " << o.doc.value("input", std::string()) << " ==\n";
      std::cout << o.text;
    }
  }
  return code;
}
