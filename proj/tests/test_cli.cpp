#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qline/cli/cache.hpp"
#include "qline/cli/commands.hpp"
#include "qline/cli/manifest.hpp"
#include "qline/cli/spec_file.hpp"
#include "qline/dataset.hpp"

namespace fs = std::filesystem;
using namespace qline;
using namespace qline::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome qline_run(std::vector<std::string> args) {
  args.insert(args.begin(), "qline");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("qline-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string field(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + ": ");
  if (pos == std::string::npos) return {};
  const auto start = pos + key.size() + 2;
  return text.substr(start, text.find('\n', start) - start);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("probability command") {
  const auto r = qline_run({"probability", "--process", "excitation", "--omega", "1", "--shape",
                            "gaussian", "--sigma", "1e-4", "--cutoff", "exponential", "--eps", "5",
                            "--r", "1", "--T", "1", "--lambda", "1"});
  CHECK(r.code == kOk);
  const Bundle b = validate(default_parameters());
  CHECK(field(r.out, "p") ==
        dataset::format_number(response::transition_probability(b).p));

  const auto zero = qline_run({"probability", "--lambda", "0"});
  CHECK(zero.code == kOk);
  CHECK(field(zero.out, "p") == "0.0000000000000000e+00");

  const auto bad = qline_run({"probability", "--sigma", "0"});
  CHECK(bad.code == kInvalid);
  CHECK(bad.err.find("sigma must be positive") != std::string::npos);

  CHECK(qline_run({"probability", "--shape", "square"}).code == kInvalid);
  CHECK(qline_run({"probability", "--nonsense"}).code == kInvalid);
  CHECK(qline_run({}).code == kInvalid);
  CHECK(qline_run({"probability", "--max-panels", "2", "--rel-tol", "1e-14"}).code == kQuadrature);

  const auto csv = qline_run({"probability", "--csv"});
  CHECK(csv.out.rfind("process,omega,lambda", 0) == 0);
}

TEST_CASE("laboratory units") {
  // 10 GHz gap, 50 GHz cutoff scale, 0.1 ns durations: the natural defaults.
  const double um = 1e-4 * 29979.2458;
  const auto ghz = qline_run({"probability", "--units", "ghz", "--omega", "10", "--eps", "50",
                              "--r", "0.1", "--T", "0.1", "--sigma", std::to_string(um)});
  const auto nat = qline_run({"probability"});
  REQUIRE(ghz.code == kOk);
  const double a = std::stod(field(ghz.out, "p"));
  const double b = std::stod(field(nat.out, "p"));
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("convert-coupling") {
  const auto r = qline_run({"convert-coupling", "--alpha", "1"});
  CHECK(r.code == kOk);
  CHECK(std::stod(field(r.out, "lambda")) == doctest::Approx(2.5066283).epsilon(1e-8));
  CHECK(qline_run({"convert-coupling", "--alpha", "-1"}).code == kInvalid);
}

TEST_CASE("verify command") {
  const auto ok = qline_run({"verify", "--points", "5"});
  CHECK(ok.code == kOk);
  CHECK(ok.out.find("kernel max rel dev < 1e-6: PASS") != std::string::npos);
  const auto fault = qline_run({"verify", "--points", "5", "--inject-kernel-fault", "1e-4"});
  CHECK(fault.code == kFailure);
  CHECK(fault.out.find("kernel max rel dev < 1e-6: FAIL") != std::string::npos);
  CHECK(fault.out.find("worst kernel tuple: r=") != std::string::npos);
}

TEST_CASE("cache hits, misses and corruption") {
  TempDir dir;
  std::ostringstream warnings;
  ProbabilityCache cache(dir.path, &warnings);
  const Bundle b = validate(default_parameters());
  response::QuadratureSettings s;
  CHECK_FALSE(cache.lookup(b, s));
  const auto result = response::transition_probability(b, s);
  cache.store(b, s, result);
  const auto hit = cache.lookup(b, s);
  REQUIRE(hit);
  CHECK(hit->p_over_lambda_sq == result.p_over_lambda_sq);
  CHECK(hit->panels_used == result.panels_used);
  CHECK(cache.hits() == 1);

  auto loose = s;
  loose.rel_tol = 1e-6;
  CHECK(cache.key(b, loose) != cache.key(b, s));
  CHECK_FALSE(cache.lookup(b, loose));

  {
    std::ofstream f(dir.path / (cache.key(b, s) + ".json"), std::ios::trunc);
    f << "{ not json";
  }
  CHECK_FALSE(cache.lookup(b, s));
  CHECK(warnings.str().find("corrupt cache entry") != std::string::npos);

  fs::remove_all(dir.path);
  fs::create_directories(dir.path);
  CHECK_FALSE(cache.lookup(b, s));
  CHECK(cache.misses() == 4);
}

TEST_CASE("cache directory resolution") {
  ::setenv(cache_env_var, "/tmp/from-env", 1);
  CHECK(resolve_cache_dir("") == fs::path("/tmp/from-env"));
  CHECK(resolve_cache_dir("/tmp/flag") == fs::path("/tmp/flag"));
  ::unsetenv(cache_env_var);
  CHECK_FALSE(resolve_cache_dir(""));
}

TEST_CASE("spec files") {
  std::istringstream good(R"([sweep]
label = demo

[fixed]
process = emission
shape = quartic
sigma = 2e-4

[axis.eps]
min = 0.5
max = 50
points = 3
spacing = log

[models]
compare = cutoffs
set = gaussian, exponential

[output]
path = out.csv
threads = 2
)");
  const auto file = parse_spec(good);
  CHECK(file.spec.label == "demo");
  CHECK(file.spec.fixed.qubit.process == Process::Emission);
  CHECK(file.spec.fixed.smearing.shape == Shape::Quartic);
  CHECK(file.spec.fixed.smearing.sigma == 2e-4);
  CHECK(file.spec.fixed.cutoff.epsilon == 5.0);
  REQUIRE(file.spec.axes.size() == 1);
  CHECK(file.spec.axes[0].axis == sweep::Axis::Epsilon);
  CHECK(file.spec.axes[0].points == 3);
  CHECK(file.spec.cutoffs == std::vector<CutoffModel>{CutoffModel::Gaussian, CutoffModel::Exponential});
  CHECK(file.output_path == "out.csv");
  CHECK(file.spec.threads == 2);

  std::ostringstream emitted;
  write_spec(emitted, file);
  std::istringstream again(emitted.str());
  const auto round = parse_spec(again);
  CHECK(round.spec.axes[0].upper == file.spec.axes[0].upper);
  CHECK(round.spec.cutoffs == file.spec.cutoffs);

  const auto fails = [](const std::string& text) {
    std::istringstream in(text);
    try {
      (void)parse_spec(in);
    } catch (const SpecFileError&) {
      return true;
    } catch (const ValidationError&) {
      return true;
    }
    return false;
  };
  CHECK(fails("[fixed]\n"));                                   // no axes
  CHECK(fails(""));
  CHECK(fails("[fixed]\n[axis.eps]\n"));                       // empty axis section
  CHECK(fails("[fixed]\n[axis.eps]\nmin=1\nmax=2\n"));         // missing points
  CHECK(fails("[fixed]\nsigma=abc\n[axis.r]\nmin=1\nmax=2\npoints=2\n"));
  CHECK(fails("[fixed]\ncolour=red\n[axis.r]\nmin=1\nmax=2\npoints=2\n"));
  CHECK(fails("[fixed]\n[axis.mass]\nmin=1\nmax=2\npoints=2\n"));
  CHECK(fails("[fixed]\n[axis.r]\nmin=1\nmax=2\npoints=2\n[extra]\nkey=1\n"));
  CHECK(fails("[fixed\n"));
  CHECK_FALSE(fails("[fixed]\n[axis.r]\nmin=1\nmax=2\npoints=2\n"));
}

TEST_CASE("sweep command: library equality, manifest, determinism") {
  TempDir dir;
  const auto spec_path = (dir.path / "fig2c.spec").string();
  const auto emitted = qline_run({"figure", "--id", "fig2c", "--points", "4", "--emit-spec"});
  REQUIRE(emitted.code == kOk);
  {
    std::ofstream f(spec_path);
    f << emitted.out;
  }
  const auto out_path = (dir.path / "fig2c.csv").string();
  const auto cache_dir = (dir.path / "cache").string();
  const auto first =
      qline_run({"sweep", "--spec", spec_path, "--out", out_path, "--cache-dir", cache_dir});
  REQUIRE(first.code == kOk);
  const std::string bytes = slurp(out_path);

  sweep::FigureOptions options;
  options.points_1d = 4;
  const auto library = sweep::figure_dataset(sweep::FigureId::Fig2c, {}, options);
  const auto library_text = dataset::to_string(library);
  // The CLI output is the library dataset plus trailing manifest metadata.
  const auto header_at = bytes.find(dataset::header);
  REQUIRE(header_at != std::string::npos);
  CHECK(bytes.substr(header_at) == library_text.substr(library_text.find(dataset::header)));
  CHECK(bytes.find("# manifest: fig2c.csv.manifest.json\n") != std::string::npos);
  CHECK(bytes.find("timestamp") == std::string::npos);

  const auto manifest = nlohmann::json::parse(slurp(out_path + ".manifest.json"));
  CHECK(manifest.at("command") == "sweep");
  CHECK(bytes.find("# input_hash: " + manifest.at("input_hash").get<std::string>()) !=
        std::string::npos);

  const auto warm = qline_run(
      {"sweep", "--spec", spec_path, "--out", out_path, "--cache-dir", cache_dir, "--threads", "3"});
  REQUIRE(warm.code == kOk);
  CHECK(warm.err.find(" 0 misses") != std::string::npos);
  CHECK(slurp(out_path) == bytes);

  const auto cold = qline_run({"sweep", "--spec", spec_path, "--out", out_path, "--no-cache"});
  REQUIRE(cold.code == kOk);
  CHECK(slurp(out_path) == bytes);
}

TEST_CASE("sweep command errors") {
  TempDir dir;
  const auto spec_path = (dir.path / "empty.spec").string();
  {
    std::ofstream f(spec_path);
    f << "[fixed]\nprocess = emission\n[axis.eps]\n";
  }
  CHECK(qline_run({"sweep", "--spec", spec_path}).code == kInvalid);
  CHECK(qline_run({"sweep", "--spec", (dir.path / "missing.spec").string()}).code == kInvalid);
  CHECK(qline_run({"figure", "--id", "fig7"}).code == kInvalid);
}

}
