#include "f4kit/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "f4kit/io.hpp"
#include "f4kit/verify.hpp"

namespace f4kit::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedCase:
    case ErrorCode::UnsupportedExtension:
    case ErrorCode::UnsupportedField:
    case ErrorCode::UnsupportedIdempotent:
    case ErrorCode::NonNormalizableGamma:
    case ErrorCode::SearchSpaceTooLarge: return kExitUnsupported;
    case ErrorCode::InternalInvariant: return kExitVerification;
    default: return kExitInvalidInput;
  }
}

namespace {

struct Job {
  std::string in_file;
  std::string json_text;
  std::string ext;
  std::string suite = "all";
  std::uint64_t seed = verify::kDefaultSeed;
  std::int64_t bound = SearchOptions{}.max_bound;
  std::string out_file;
  bool serial = false;
};

io::Json read_input(const Job& job) {
  if (job.in_file.empty() == job.json_text.empty()) {
    raise(ErrorCode::InvalidInput, "give exactly one of --in FILE or --json TEXT");
  }
  if (!job.json_text.empty()) return io::parse_text(job.json_text);
  std::ifstream file(job.in_file);
  if (!file) raise(ErrorCode::InvalidInput, "cannot read " + job.in_file);
  std::stringstream text;
  text << file.rdbuf();
  return io::parse_text(text.str());
}

SearchOptions options_for(const Job& job) {
  if (job.bound < 1) raise(ErrorCode::InvalidInput, "--bound must be positive");
  return SearchOptions{job.bound, job.serial ? kernels::Exec::Serial : kernels::Exec::Parallel};
}

io::Json classify(const Job& job) {
  const auto in = io::algebra_from_json(read_input(job));
  const auto options = options_for(job);
  return in.type == GroupType::G2 ? io::to_json(g2_rank(*in.composition, options))
                                  : io::to_json(f4_rank(*in.albert, options));
}

io::Json witt(const Job& job) { return io::to_json(witt_decompose(io::form_from_json(read_input(job)), options_for(job))); }

io::Json kernel(const Job& job) {
  const auto in = io::algebra_from_json(read_input(job));
  if (!in.albert) raise(ErrorCode::InvalidInput, "kernel needs an Albert algebra descriptor ({\"f4\": ...})");
  return io::to_json(f4_kernel(*in.albert, options_for(job)));
}

io::Json excellence(const Job& job) {
  const Field ext = io::field_from_json(io::parse_text(job.ext));
  const auto in = io::algebra_from_json(read_input(job));
  const auto options = options_for(job);
  return in.type == GroupType::G2 ? io::to_json(g2_excellence(*in.composition, ext, options))
                                  : io::to_json(f4_excellence(*in.albert, ext, options));
}

io::Json equiv(const Job& job) {
  const io::Json j = read_input(job);
  if (!j.is_object() || j.size() != 2 || !j.contains("a") || !j.contains("b")) {
    raise(ErrorCode::InvalidInput, "equiv expects {\"a\": form, \"b\": form}");
  }
  const QuadraticForm a = io::form_from_json(j["a"]);
  const QuadraticForm b = io::form_from_json(j["b"]);
  return io::Json{{"a", io::to_json(a)}, {"b", io::to_json(b)}, {"equivalent", equivalent(a, b)}};
}

void emit(const Job& job, const io::Json& report, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (job.out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream file(job.out_file);
  if (!file) raise(ErrorCode::InvalidInput, "cannot write " + job.out_file);
  file << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact composition and Albert algebras, split ranks of G2 and F4, kernels and excellence", "f4kit"};
  app.require_subcommand(1);
  Job job;

  auto add_input = [&job](CLI::App* sub) {
    sub->add_option("--in", job.in_file, "JSON input file");
    sub->add_option("--json", job.json_text, "inline JSON input");
    sub->add_option("--bound", job.bound, "largest coordinate bound for witness searches");
    sub->add_flag("--serial", job.serial, "use the serial reference kernels");
  };
  auto add_output = [&job](CLI::App* sub) { sub->add_option("--out", job.out_file, "write the report to a file"); };

  auto* classify_cmd = app.add_subcommand("classify", "split rank of G2 = Aut(C) or F4 = Aut(A)");
  auto* witt_cmd = app.add_subcommand("witt", "Witt decomposition of a diagonal form");
  auto* kernel_cmd = app.add_subcommand("kernel", "anisotropic-kernel descriptor of F4 = Aut(A)");
  auto* excellence_cmd = app.add_subcommand("excellence", "excellence check over a field extension");
  auto* equiv_cmd = app.add_subcommand("equiv", "equivalence of two forms from invariants");
  auto* verify_cmd = app.add_subcommand("verify", "run the seeded property suites");
  for (auto* sub : {classify_cmd, witt_cmd, kernel_cmd, excellence_cmd, equiv_cmd}) {
    add_input(sub);
    add_output(sub);
  }
  excellence_cmd->add_option("--ext", job.ext, "extension field as JSON, e.g. {\"kind\":\"QSqrt\",\"d\":-1}")->required();
  verify_cmd->add_option("--suite", job.suite, "fields, qforms, composition, albert, groups or all");
  verify_cmd->add_option("--seed", job.seed, "seed for every randomized check");
  add_output(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << io::Json{{"error", {{"code", "InvalidInput"}, {"message", e.what()}}}}.dump(2) << "\n";
    return kExitInvalidInput;
  }

  try {
    if (*verify_cmd) {
      io::Json suites = io::Json::array();
      bool passed = true;
      for (const auto& s : verify::run_suites(job.suite, job.seed)) {
        passed = passed && s.passed();
        suites.push_back(verify::to_json(s));
      }
      emit(job, io::Json{{"seed", job.seed}, {"suites", std::move(suites)}, {"passed", passed}}, out);
      return passed ? kExitOk : kExitVerification;
    }
    io::Json report;
    if (*classify_cmd) report = classify(job);
    else if (*witt_cmd) report = witt(job);
    else if (*kernel_cmd) report = kernel(job);
    else if (*excellence_cmd) report = excellence(job);
    else report = equiv(job);
    emit(job, report, out);
    return kExitOk;
  } catch (const Error& e) {
    out << io::diagnostic(e).dump(2) << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    out << io::Json{{"error", {{"code", "InternalInvariant"}, {"message", e.what()}}}}.dump(2) << "\n";
    return kExitVerification;
  }
}

}  // namespace f4kit::cli
