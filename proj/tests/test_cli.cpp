#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kwlab/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run kw(std::vector<std::string> args) {
  args.insert(args.begin(), "kwlab");
  std::ostringstream out, err;
  const int code = kwlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::size_t data_rows(const std::string& s) {
  std::size_t n = 0;
  for (const auto& l : lines(s))
    if (!l.empty() && l[0] != '#' && l[0] != 'r' && l[0] != 'x') ++n;
  return n;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

std::string tmp(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

const std::vector<std::string> kFast = {"--angular-level", "8", "--radial-level", "16"};

std::vector<std::string> with(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("list-solutions") {
    const Run r = kw({"list-solutions"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0].rfind("ps-lift\t", 0) == 0);
  }

  TEST_CASE("profile writes one row per sample behind a header") {
    const Run r = kw(with({"profile", "--solution", "ps-lift", "--r-min", "0.5", "--r-max", "50", "--samples", "100"},
                          kFast));
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() > 2);
    CHECK(ls[0].rfind("# kwlab ", 0) == 0);
    CHECK(ls[0].find("seed=") != std::string::npos);
    CHECK(ls[0].find("command=profile") != std::string::npos);
    CHECK(r.out.find("r,kappa,N,lambda_min,lambda_max,trace_T,kappa_v,N_v,P_uv\n") != std::string::npos);
    CHECK(data_rows(r.out) == 100);
  }

  TEST_CASE("identity-check on the constant mode passes") {
    const Run r = kw({"identity-check", "--solution", "const-mode"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("checks passed") != std::string::npos);
  }

  TEST_CASE("search on the linear mode reports growth") {
    const Run r = kw(with({"search", "--solution", "linear-mode", "--epsilon", "0.01"}, kFast));
    CHECK(r.code == 2);
    CHECK(r.out.find("flat_radius=not-found") != std::string::npos);
    CHECK(r.out.find("branch=growth") != std::string::npos);
  }

  TEST_CASE("search on the constant mode finds the outer radius") {
    const Run r = kw(with({"search", "--solution", "const-mode", "--epsilon", "0.001", "--r-min", "1"}, kFast));
    CHECK(r.code == 0);
    CHECK(r.out.find("flat_radius=50") != std::string::npos);
    CHECK(r.out.find("branch=commuting") != std::string::npos);
  }

  TEST_CASE("search reads a saved profile") {
    const std::string path = tmp("kwlab_cli_profile.csv");
    REQUIRE(kw(with({"profile", "--solution", "const-mode", "--r-min", "1", "--samples", "60", "-o", path}, kFast)).code == 0);
    const Run r = kw({"search", "--profile-in", path, "--epsilon", "0.001"});
    CHECK(r.code == 0);
    CHECK(r.out.find("branch=flat") != std::string::npos);
    std::filesystem::remove(path);
  }

  TEST_CASE("deterministic runs are byte-identical") {
    const auto args = with({"profile", "--solution", "tau-quarter", "--r-min", "1", "--r-max", "6", "--samples", "8",
                            "--deterministic", "--seed", "99"},
                           kFast);
    const Run a = kw(args), b = kw(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("seed=99") != std::string::npos);
    CHECK(a.out.find("isa=scalar") != std::string::npos);
    const auto res = std::vector<std::string>{"residual", "--solution", "ps-lift", "--equation", "kw-half",
                                              "--deterministic"};
    CHECK(kw(res).out == kw(res).out);
  }

  TEST_CASE("config file sits between flags and defaults") {
    const std::string path = tmp("kwlab_cli_config.toml");
    {
      std::ofstream os(path);
      os << "solution = \"abelian\"\nr_min = 1.0\nr_max = 4.0\nsamples = 6\nangular_level = 8\nradial_level = 16\n";
    }
    Run r = kw({"--config", path, "profile"});
    CHECK(r.code == 0);
    CHECK(r.out.find("solution=abelian") != std::string::npos);
    CHECK(r.out.find("r_max=4 ") != std::string::npos);
    CHECK(r.out.find("annulus_level=4") != std::string::npos);
    CHECK(data_rows(r.out) == 6);
    r = kw({"--config", path, "profile", "--samples", "3", "--solution", "linear-mode"});
    CHECK(r.code == 0);
    CHECK(r.out.find("solution=linear-mode") != std::string::npos);
    CHECK(data_rows(r.out) == 3);
    std::filesystem::remove(path);
    CHECK(kw({"--config", path, "profile"}).code == 1);
  }

  TEST_CASE("usage errors") {
    CHECK(kw({}).code == 1);
    CHECK(kw({"frobnicate"}).code == 1);
    CHECK(kw({"profile", "--r-min", "5", "--r-max", "1"}).code == 1);
    CHECK(kw({"profile", "--solution", "nope"}).code == 1);
    CHECK(kw({"profile", "--angular-level", "2"}).code == 1);
    CHECK(kw({"residual", "--equation", "kw", "--tau", "2"}).code == 1);
    CHECK(kw({"residual", "--equation", "bogus"}).code == 1);
    CHECK(kw({"search", "--solution", "const-mode", "--epsilon", "1.5"}).code == 1);
    const Run r = kw({"profile", "--solution", "nope"});
    CHECK(r.err.find("nope") != std::string::npos);
    CHECK(kw({"--help"}).code == 0);
    CHECK(kw({"--version"}).code == 0);
  }

  TEST_CASE("residual report format and exit codes") {
    Run r = kw({"residual", "--solution", "ps-lift", "--equation", "kw-half", "--points", "10"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    CHECK(ls[1] == "x1,x2,x3,x4,eq,component,norm");
    CHECK(ls.back().rfind("# summary eq=kw_half points=10 max=", 0) == 0);
    CHECK(ls[2].find(",kw_half,") != std::string::npos);
    r = kw({"residual", "--solution", "ps-lift", "--equation", "kw", "--tau", "0"});
    CHECK(r.code == 2);
    CHECK(kw({"residual", "--equation", "monopole"}).code == 0);
    CHECK(kw({"residual", "--solution", "tau-quarter", "--equation", "claims"}).code == 0);
  }

  TEST_CASE("relax: cap, checkpoint, resume, trace") {
    CHECK(kw({"relax", "--solution", "const-mode", "--nodes", "8", "--max-iters", "1"}).code == 3);

    const std::string ck = tmp("kwlab_cli_relax.ckpt"), tr = tmp("kwlab_cli_trace.csv");
    Run r = kw({"relax", "--solution", "linear-mode", "--nodes", "8", "--max-iters", "3", "--tol", "1e-12",
                "--checkpoint", ck, "--trace", tr});
    CHECK(r.code == 3);
    CHECK(std::filesystem::exists(ck));
    const auto tl = lines(slurp(tr));
    CHECK(tl[1] == "iteration,energy,max_gradient,step,halvings");
    CHECK(tl.size() == 2 + 4);

    r = kw({"relax", "--solution", "linear-mode", "--nodes", "8", "--tol", "1e-6", "--resume", ck});
    CHECK(r.code == 0);
    CHECK(r.out.find("converged=1") != std::string::npos);
    CHECK(r.out.find("energy_monotone=1") != std::string::npos);
    CHECK(kw({"relax", "--solution", "linear-mode", "--nodes", "9", "--resume", ck}).code == 1);
    std::filesystem::remove(ck);
    std::filesystem::remove(tr);
  }
}
