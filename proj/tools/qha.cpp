// qha: command-line front end for the graded quasi-hereditary algebra toolkit.
//
// Exit codes: 0 when every verdict holds, 1 when one fails, 2 on input or
// usage errors.

#include "qha/errors.hpp"
#include "qha/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Options {
  std::string field;
  int max_degree = -1;
  std::string format = "text";
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A path, or the name of a built-in example when no such file exists.
qha::QuiverPresentation load(const std::string& source, const Options& opt) {
  qha::QuiverPresentation p;
  if (std::filesystem::exists(source)) {
    std::ifstream in(source);
    std::stringstream text;
    text << in.rdbuf();
    try {
      p = qha::parse_presentation(text.str());
    } catch (const qha::ParseError& e) {
      throw InputError(source + ": " + e.what());
    }
  } else {
    try {
      p = qha::corpus(source);
    } catch (const std::invalid_argument&) {
      throw InputError(source + ": no such file or corpus entry");
    }
  }
  if (!opt.field.empty()) {
    try {
      p.field = qha::Field::parse(opt.field);
      qha::validate(p);
    } catch (const std::exception& e) {
      throw InputError(source + ": " + e.what());
    }
  }
  return p;
}

qha::AlgebraPtr build(const std::string& source, const Options& opt) {
  const auto p = load(source, opt);
  try {
    return qha::build_algebra(p, opt.max_degree >= 0 ? std::optional<int>(opt.max_degree) : std::nullopt);
  } catch (const qha::NotFiniteDimensional& e) {
    throw InputError(source + ": " + e.what());
  }
}

int emit(const qha::AnalysisReport& r, const Options& opt) {
  if (opt.format == "json")
    std::cout << qha::to_json(r).dump(2) << '\n';
  else
    std::cout << qha::render_text(r);
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded quasi-hereditary algebras: Koszul and Ringel duals, balance checks"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--field", opt.field, "Override the field: Q or Fp:<p>");
  app.add_option("--max-degree", opt.max_degree, "Degree cap for building the algebra")->check(CLI::NonNegativeNumber);
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string file, file2, property, which, out_path, name;

  auto* analyze = app.add_subcommand("analyze", "All verdicts and both duals");
  analyze->add_option("FILE", file, "Presentation file or corpus name")->required();

  auto* check = app.add_subcommand("check", "One property");
  check->add_option("PROPERTY", property)->required()->check(CLI::IsMember({"balanced", "koszul", "standard-koszul", "qh"}));
  check->add_option("FILE", file)->required();

  auto* dual = app.add_subcommand("dual", "Presentation of the Ringel or Koszul dual");
  dual->add_option("KIND", which)->required()->check(CLI::IsMember({"ringel", "koszul"}));
  dual->add_option("FILE", file)->required();
  dual->add_option("-o,--output", out_path, "Write the presentation here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Duality claims for a balanced algebra, or closure under truncation, sums and tensor products");
  verify->add_option("CLAIM", which)->required()->check(CLI::IsMember({"theorem1", "closure"}));
  verify->add_option("FILE", file)->required();
  verify->add_option("FILE2", file2);

  auto* corpus = app.add_subcommand("corpus", "Built-in examples");
  corpus->add_option("ACTION", which)->required()->check(CLI::IsMember({"list", "show"}));
  corpus->add_option("NAME", name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*corpus) {
      if (which == "list") {
        for (const auto& n : qha::corpus_names()) std::cout << n << '\n';
        return 0;
      }
      if (name.empty()) throw InputError("corpus show needs a NAME");
      try {
        std::cout << qha::render(qha::corpus(name));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      return 0;
    }
    if (*analyze) return emit(qha::analyze(build(file, opt)), opt);
    if (*check) {
      const auto a = build(file, opt);
      qha::AnalysisReport r;
      r.command = "check " + property;
      r.algebra = qha::summarize(a);
      r.verdicts.push_back(qha::check(a, property));
      return emit(r, opt);
    }
    if (*verify) {
      const auto a = build(file, opt);
      if (which == "theorem1") return emit(qha::verify_theorem1(a), opt);
      return emit(qha::verify_closure(a, file2.empty() ? nullptr : build(file2, opt)), opt);
    }
    if (*dual) {
      const auto a = build(file, opt);
      const qha::DualityResult d = which == "ringel" ? qha::ringel_dual(a) : qha::koszul_dual(a);
      std::string text;
      try {
        text = qha::render(qha::extract_presentation(d.algebra));
      } catch (const qha::Degree0NotSemisimple& e) {
        std::cerr << d.provenance << " is not positively graded: " << e.what() << '\n';
        return 1;
      }
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        if (!out) throw InputError(out_path + ": cannot write");
        out << text;
      }
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qha::NotQuasiHereditary& e) {
    std::cerr << "not quasi-hereditary: " << e.what() << '\n';
    return 1;
  } catch (const qha::CapExceeded& e) {
    std::cerr << "resolution did not terminate: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
