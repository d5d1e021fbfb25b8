// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "homcalc/catalog.hpp"
#include "homcalc/document.hpp"
#include "homcalc/homotopy.hpp"
#include "test_support.hpp"

using namespace homcalc;
using homcalc::doc::json;
using homcalc::testing::Rng;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

InvariantFactors inv(std::size_t rank, std::initializer_list<long long> t) {
  return InvariantFactors{rank, std::vector<Integer>(t.begin(), t.end())};
}

/// Collects failures for one criterion; only the first few are printed.
struct Check {
  std::vector<std::string> failures;
  std::size_t checked = 0;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (!ok) failures.push_back(what());
  }
};

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(HOMCALC_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Classical pi_1 of the catalog groups: the centre of the simply connected
// cover divided out, plus the rank of the cocentre.
struct ClassicalRow {
  std::string family;
  long long n;
  InvariantFactors pi1;
  InvariantFactors pic;
};

std::vector<ClassicalRow> classical_table() {
  std::vector<ClassicalRow> out;
  for (long long n = 1; n <= 8; ++n) {
    InvariantFactors zn = n == 1 ? inv(0, {}) : inv(0, {n});
    out.push_back({"SL", n, inv(0, {}), inv(0, {})});
    out.push_back({"GL", n, inv(1, {}), inv(0, {})});
    out.push_back({"PGL", n, zn, zn});
    out.push_back({"Sp", n, inv(0, {}), inv(0, {})});
  }
  for (long long n = 3; n <= 8; ++n) {
    out.push_back({"SO", n, inv(0, {2}), inv(0, {2})});
    out.push_back({"Spin", n, inv(0, {}), inv(0, {})});
  }
  for (long long n = 0; n <= 4; ++n) out.push_back({"Torus", n, inv(static_cast<std::size_t>(n), {}), inv(0, {})});
  return out;
}

std::string label(const ClassicalRow& r) { return r.family + "(" + std::to_string(r.n) + ")"; }

SpaceDescriptor torus_mod_mu(long long n) {
  EmbeddingDescriptor e;
  e.char_map = IntMatrix{{1}};
  return {catalog::torus(1), MultiplicativeGroup{FgAbGroup::cyclic(n)}, e};
}

// ---------------------------------------------------------------------------

Check known_spaces(double budget_each) {
  Check c;
  struct Case {
    std::string name;
    std::function<SpaceDescriptor()> space;
    InvariantFactors pi1;
    std::optional<InvariantFactors> pi2;
  };
  std::vector<Case> cases{
      {"SL2/T", [] { return catalog::maximal_torus(catalog::special_linear(2)); }, inv(0, {}), inv(1, {})},
      {"SL2/mu2", [] { return catalog::center_mu(2); }, inv(0, {2}), std::nullopt},
      {"GL2/SL2", [] { return catalog::det_kernel(2); }, inv(1, {}), inv(0, {})},
      {"SL3/SL2", [] { return catalog::block(2, 3); }, inv(0, {}), inv(0, {})},
  };
  for (long long n = 1; n <= 6; ++n)
    cases.push_back({"Gm/mu" + std::to_string(n), [n] { return torus_mod_mu(n); }, inv(1, {}), std::nullopt});
  for (const auto& row : classical_table())
    cases.push_back({label(row) + "/1",
                     [row] { return catalog::point_stabilizer(catalog::make_group(row.family, row.n)); }, row.pi1,
                     inv(0, {})});

  for (const auto& k : cases) {
    const auto t0 = Clock::now();
    try {
      SpaceDescriptor s = k.space();
      InvariantFactors p1 = pi1(s).group;
      c.expect(p1 == k.pi1, [&] { return k.name + ": pi1 = " + p1.pretty() + ", expected " + k.pi1.pretty(); });
      if (k.pi2) {
        InvariantFactors p2 = pi2(s).group;
        c.expect(p2 == *k.pi2, [&] { return k.name + ": pi2 = " + p2.pretty() + ", expected " + k.pi2->pretty(); });
      }
    } catch (const std::exception& e) {
      c.expect(false, [&] { return k.name + ": " + e.what(); });
    }
    const double dt = seconds_since(t0);
    c.expect(dt < budget_each, [&] { return k.name + ": took " + std::to_string(dt) + " s"; });
  }
  return c;
}

Check catalog_table() {
  Check c;
  for (const auto& row : classical_table()) {
    GroupDescriptor g = catalog::make_group(row.family, row.n);
    InvariantFactors p = invariants(pi1_alg(g));
    InvariantFactors q = invariants(pic_group(g));
    c.expect(p == row.pi1, [&] { return label(row) + ": pi1_alg = " + p.pretty() + ", expected " + row.pi1.pretty(); });
    c.expect(q == row.pic, [&] { return label(row) + ": pic = " + q.pretty() + ", expected " + row.pic.pretty(); });
  }
  return c;
}

Check routes_agree(int trials) {
  Check c;
  Rng rng(1001);
  for (int i = 0; i < trials; ++i) {
    auto rc = homcalc::testing::random_complex(rng, true);
    InvariantFactors a = invariants(ext0_fiber_product(rc.complex));
    InvariantFactors b = invariants(ext0_resolution(rc.complex));
    c.expect(a == b, [&] { return "trial " + std::to_string(i) + ": " + a.pretty() + " vs " + b.pretty(); });
  }
  return c;
}

Check surjection_independence(int trials) {
  Check c;
  Rng rng(1002);
  for (int i = 0; i < trials; ++i) {
    auto rc = homcalc::testing::random_complex(rng, true);
    InvariantFactors base = invariants(ext0_fiber_product(rc.complex));
    for (int s = 0; s < 3; ++s) {
      IntMatrix phi = homcalc::testing::random_surjection(rng, rc.complex.a1());
      InvariantFactors other = invariants(ext0_fiber_product(rc.complex, phi));
      c.expect(other == base,
               [&] { return "trial " + std::to_string(i) + ": " + other.pretty() + " vs " + base.pretty(); });
    }
  }
  return c;
}

Check replacements(int trials) {
  Check c;
  Rng rng(1003);
  for (int i = 0; i < trials; ++i) {
    auto rc = homcalc::testing::random_complex(rng, true);
    IntMatrix phi = homcalc::testing::random_surjection(rng, rc.complex.a1());
    FiberProductReplacement rep = fiber_product_replacement(rc.complex, phi);
    const std::string tag = "trial " + std::to_string(i);
    c.expect(is_quasi_isomorphism(rep.to_original), [&] { return tag + ": not a quasi-isomorphism"; });
    InvariantFactors orig = invariants(ext0_resolution(rc.complex));
    InvariantFactors repl = invariants(ext0_resolution(rep.to_original.source));
    c.expect(repl == orig, [&] { return tag + ": " + repl.pretty() + " vs " + orig.pretty(); });
    c.expect(invariants(rep.ext0) == orig, [&] { return tag + ": replacement Ext0 " + invariants(rep.ext0).pretty(); });
  }
  return c;
}

Check method_agreement(int trials) {
  Check c;
  Rng rng(1004);
  std::vector<std::pair<std::string, SpaceDescriptor>> spaces;
  for (int i = 0; i < trials; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto k = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(n)));
    spaces.emplace_back("torus pair " + std::to_string(i),
                        catalog::subtorus(homcalc::testing::random_saturated_cochars(rng, n, k)));
  }
  for (const auto& row : classical_table()) {
    if (!row.pic.is_trivial()) continue;
    GroupDescriptor g = catalog::make_group(row.family, row.n);
    spaces.emplace_back(label(row) + "/1", catalog::point_stabilizer(g));
    if (g.datum().rank > 0) {
      spaces.emplace_back(label(row) + "/T", catalog::maximal_torus(g));
      spaces.emplace_back(label(row) + "/Gm", catalog::diagonal_torus_in(g));
    }
  }
  for (long long n = 2; n <= 6; ++n) spaces.emplace_back("GL/SL " + std::to_string(n), catalog::det_kernel(n));
  for (long long n = 3; n <= 6; ++n)
    for (long long m = 2; m < n; ++m)
      spaces.emplace_back("SL" + std::to_string(n) + "/SL" + std::to_string(m), catalog::block(m, n));

  for (const auto& [name, s] : spaces) {
    try {
      InvariantFactors a = pi1_thm_main(s).group;
      InvariantFactors b = pi1_thm_pi2(s).group;
      c.expect(a == b, [&] { return name + ": " + a.pretty() + " vs " + b.pretty(); });
      if (s.g.datum().roots.empty()) {
        // Quotient of tori: a torus of the complementary rank.
        const std::size_t expected = s.g.datum().rank - s.h.datum().rank;
        c.expect(a == inv(expected, {}), [&] { return name + ": torus quotient gave " + a.pretty(); });
      }
    } catch (const std::exception& e) {
      c.expect(false, [&] { return name + ": " + e.what(); });
    }
  }
  return c;
}

Check pic_refusal() {
  Check c;
  for (long long n = 2; n <= 4; ++n) {
    const std::string file = std::string(HOMCALC_SAMPLES_DIR) + "/pgl" + std::to_string(n) + "_point.json";
    const std::string want = "Z/" + std::to_string(n);
    Run js = run_cli("pi1 --method thm-main --json --input " + file);
    c.expect(js.exit_code == 2, [&] { return "PGL" + std::to_string(n) + ": exit " + std::to_string(js.exit_code); });
    try {
      json j = json::parse(js.out);
      c.expect(j["results"].empty(), [&] { return "PGL" + std::to_string(n) + ": emitted " + j["results"].dump(); });
      bool found = false;
      for (const auto& e : j["errors"])
        found |= e["kind"] == "PicNonTrivial" && e["message"].get<std::string>().find("Pic(G) = " + want) !=
                                                     std::string::npos;
      c.expect(found, [&] { return "PGL" + std::to_string(n) + ": no Pic = " + want + " in " + j["errors"].dump(); });
    } catch (const std::exception& e) {
      c.expect(false, [&] { return "PGL" + std::to_string(n) + ": " + e.what(); });
    }
    Run text = run_cli("pi1 --method thm-main --input " + file);
    c.expect(text.exit_code == 2 && text.out == "PicNonTrivial: Pic(G) = " + want + "\n",
             [&] { return "PGL" + std::to_string(n) + ": text output '" + text.out + "'"; });
  }
  return c;
}

Check smith_forms(int trials) {
  Check c;
  Rng rng(1008);
  for (int i = 0; i < trials; ++i) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 6));
    const auto k = static_cast<std::size_t>(rng.uniform(1, 6));
    IntMatrix m = homcalc::testing::random_matrix(rng, r, k, -20, 20);
    SnfResult s = snf(m);
    const std::string tag = "trial " + std::to_string(i);
    c.expect(s.U * m * s.V == s.D, [&] { return tag + ": U M V != D"; });
    c.expect(is_unimodular(s.U) && is_unimodular(s.V), [&] { return tag + ": U or V not unimodular"; });
    bool diagonal_ok = true;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (a != b && s.D(a, b) != 0) diagonal_ok = false;
    const auto d = s.invariant_factors();
    for (std::size_t a = 0; a + 1 < d.size(); ++a)
      if (d[a] <= 0 || d[a + 1] % d[a] != 0) diagonal_ok = false;
    c.expect(diagonal_ok, [&] { return tag + ": D is not a divisibility chain"; });
    c.expect(d == homcalc::testing::invariant_factors_by_minors(m), [&] { return tag + ": differs from minors"; });
    IntMatrix p = homcalc::testing::random_unimodular(rng, r).first;
    IntMatrix q = homcalc::testing::random_unimodular(rng, k).first;
    c.expect(snf(p * m * q).diagonal == s.diagonal, [&] { return tag + ": not invariant under P M Q"; });
  }
  return c;
}

Check golden_files() {
  Check c;
  const fs::path golden_dir = HOMCALC_GOLDEN_DIR;
  const fs::path samples = HOMCALC_SAMPLES_DIR;
  std::set<std::string> covered;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(golden_dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  c.expect(!files.empty(), [] { return std::string("no golden files"); });

  for (const auto& path : files) {
    const std::string stem = path.stem().string();
    std::vector<std::string> parts;
    std::stringstream ss(stem);
    for (std::string p; std::getline(ss, p, '.');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) {
      c.expect(false, [&] { return stem + ": bad golden name"; });
      continue;
    }
    covered.insert(parts[0]);
    std::string args = parts[1] + " --input " + (samples / (parts[0] + ".json")).string() + " --json --stable";
    if (parts.size() == 3) args += parts[2] == "oracle" ? " --oracle" : " --method " + parts[2];
    Run r = run_cli(args);
    c.expect(r.out == read_file(path), [&] { return stem + ": output differs from golden"; });
  }
  for (const auto& entry : fs::directory_iterator(samples)) {
    if (entry.path().extension() != ".json") continue;
    const std::string name = entry.path().stem().string();
    c.expect(covered.count(name) > 0, [&] { return name + ": sample has no golden output"; });
  }
  return c;
}

bool report(int n, const std::string& what, double budget, const std::function<Check()>& body) {
  const auto t0 = Clock::now();
  Check c;
  try {
    c = body();
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double dt = seconds_since(t0);
  const bool in_time = dt <= budget;
  const bool ok = c.failures.empty() && in_time;
  std::printf("[%s] criterion %d: %s (%zu checks, %.2f s, budget %.0f s)\n", ok ? "PASS" : "FAIL", n, what.c_str(),
              c.checked, dt, budget);
  if (!in_time) std::printf("    over the time budget\n");
  for (std::size_t i = 0; i < c.failures.size() && i < 5; ++i) std::printf("    %s\n", c.failures[i].c_str());
  if (c.failures.size() > 5) std::printf("    ... %zu more\n", c.failures.size() - 5);
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "known spaces, each under 1 s", 30, [] { return known_spaces(1.0); });
  ok &= report(2, "catalog pi1_alg and Pic, n <= 8", 5, [] { return catalog_table(); });
  ok &= report(3, "1000 random complexes: fiber product = resolution", 60, [] { return routes_agree(1000); });
  ok &= report(4, "200 complexes x 3 surjections give the same Ext0", 60,
               [] { return surjection_independence(200); });
  ok &= report(5, "200 fiber-product replacements are quasi-isomorphisms", 60, [] { return replacements(200); });
  ok &= report(6, "500 torus pairs and catalog spaces: thm_main = thm_pi2", 120,
               [] { return method_agreement(500); });
  ok &= report(7, "PGL_n via thm-main refuses with Pic = Z/n", 30, [] { return pic_refusal(); });
  ok &= report(8, "2000 random Smith normal forms", 60, [] { return smith_forms(2000); });
  ok &= report(9, "CLI golden files, byte-exact", 60, [] { return golden_files(); });
  return ok ? 0 : 1;
}
