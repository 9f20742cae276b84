#pragma once

// Command-line front end. run_cli is separate from main so tests can drive it
// with in-memory streams.

#include <cstdlib>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgev/construction.hpp"
#include "qgev/error.hpp"
#include "qgev/golden.hpp"
#include "qgev/io.hpp"
#include "qgev/pipeline.hpp"
#include "qgev/tensor.hpp"

namespace qgev::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kInput = 3 };

/// Parses an interval width: "p/q", an integer, or a decimal such as "1e-8".
inline Rational parse_width(const std::string& text) {
  Rational w;
  if (text.find_first_of(".eE") == std::string::npos) {
    w = Rational::parse(text);
  } else {
    std::string mant = text, exp_part;
    auto e = text.find_first_of("eE");
    if (e != std::string::npos) {
      mant = text.substr(0, e);
      exp_part = text.substr(e + 1);
    }
    auto dot = mant.find('.');
    std::string digits = mant;
    long scale = 0;
    if (dot != std::string::npos) {
      digits = mant.substr(0, dot) + mant.substr(dot + 1);
      scale = static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty() || digits == "-" || digits == "+") throw ParseError("malformed width '" + text + "'");
    long ex = 0;
    if (!exp_part.empty()) {
      try {
        std::size_t used = 0;
        ex = std::stol(exp_part, &used);
        if (used != exp_part.size()) throw ParseError("malformed width '" + text + "'");
      } catch (const std::logic_error&) {
        throw ParseError("malformed width '" + text + "'");
      }
    }
    Rational base = Rational::parse(digits);
    long net = ex - scale;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
    w = net < 0 ? base / Rational(p) : base * Rational(p);
  }
  if (w.sign() <= 0) throw ParseError("width must be positive");
  return w;
}

inline std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("malformed dims '" + text + "'");
    dims.push_back(std::stoul(tok));
    if (dims.back() == 0) throw ParseError("dimensions must be positive");
  }
  if (dims.empty()) throw ParseError("empty dims");
  return dims;
}

inline ExactMatrix load_matrix(const std::string& path) { return io::matrix_from_json(io::read_json_file(path)); }

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact certificates for a three-qubit entanglement witness", "qgev"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string width_text;
  std::size_t samples = 1000;
  std::uint64_t seed = VerifyConfig{}.seed;
  auto* verify = app.add_subcommand("verify", "Run the full certificate chain");
  verify->add_flag("--json", as_json, "Emit the report as JSON");
  verify->add_option("--width", width_text, "Isolation width (p/q or decimal; env QGEV_WIDTH)");
  verify->add_option("--samples", samples, "Product-state samples per bipartition")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "Sampling seed");

  std::string object;
  auto* emit = app.add_subcommand("emit", "Write a constructed or reference object");
  emit->add_option("object", object, "Object to write")
      ->required()
      ->check(CLI::IsMember({"witness", "rho1", "sigma1", "sigma2", "charpoly-rho1", "charpoly-rho1-gamma"}));

  std::string path_a, path_b;
  auto* pair = app.add_subcommand("pair", "Exact pairing <A, B> = Tr(B A^t)");
  pair->add_option("a", path_a, "First matrix file")->required();
  pair->add_option("b", path_b, "Second matrix file")->required();

  std::string path_m, dims_text, subset_text;
  auto* pt = app.add_subcommand("ptranspose", "Partial transpose on a subset of subsystems");
  pt->add_option("matrix", path_m, "Matrix file")->required();
  pt->add_option("--dims", dims_text, "Subsystem dimensions d1,d2,...")->required();
  pt->add_option("--subset", subset_text, "Subsystems (letters A,B,C or 1-based indices)")->required();

  auto* cp = app.add_subcommand("charpoly", "Characteristic polynomial det(xI - M)");
  cp->add_option("matrix", path_m, "Matrix file")->required();

  std::string path_x;
  auto* choi = app.add_subcommand("choi", "Apply the map extracted from W");
  choi->add_option("witness", path_m, "Matrix file")->required();
  choi->add_option("--dims", dims_text, "Subsystem dimensions")->required();
  choi->add_option("--subset", subset_text, "Domain subsystems")->required();
  choi->add_option("--apply", path_x, "Matrix file for X")->required();

  std::string which;
  auto* minors = app.add_subcommand("minors", "Symbolic leading minors and positivity scripts");
  minors->add_option("map", which, "B or C")->required()->check(CLI::IsMember({"B", "C"}));

  std::vector<std::string> argv_store{"qgev"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  // Argument values that need parsing beyond CLI11: failures are usage errors.
  VerifyConfig cfg;
  std::optional<PartitionSpec> spec;
  try {
    if (*verify) {
      if (width_text.empty())
        if (const char* env = std::getenv("QGEV_WIDTH")) width_text = env;
      if (!width_text.empty()) cfg.width = parse_width(width_text);
      cfg.samples = samples;
      cfg.seed = seed;
    }
    if (*pt || *choi) spec = PartitionSpec(parse_dims(dims_text), PartitionSpec::parse_subset(subset_text));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*verify) {
      auto rep = verify_all(cfg);
      if (as_json)
        out << io::report_to_json(rep).dump(2) << "\n";
      else
        out << rep.text();
      return rep.overall() ? kOk : kVerifyFailed;
    }
    if (*emit) {
      if (object == "witness") {
        out << io::matrix_to_text(build_witness());
      } else if (object == "charpoly-rho1") {
        out << io::poly_to_text(golden::charpoly_rho1());
      } else if (object == "charpoly-rho1-gamma") {
        out << io::poly_to_text(golden::charpoly_rho1_gamma());
      } else {
        auto st = build_states();
        out << io::matrix_to_text(object == "rho1" ? st.rho1 : (object == "sigma1" ? st.sigma1 : st.sigma2));
      }
      return kOk;
    }
    if (*pair) {
      out << pairing(load_matrix(path_a), load_matrix(path_b)).str() << "\n";
      return kOk;
    }
    if (*pt) {
      out << io::matrix_to_text(partial_transpose(load_matrix(path_m), *spec));
      return kOk;
    }
    if (*cp) {
      out << io::poly_to_text(charpoly(load_matrix(path_m)));
      return kOk;
    }
    if (*choi) {
      out << io::matrix_to_text(choi_apply(load_matrix(path_m), *spec, load_matrix(path_x)));
      return kOk;
    }
    if (*minors) {
      MapKind m = which == "B" ? MapKind::B_CA : MapKind::C_AB;
      bool ok = true;
      for (const auto& id : minor_polynomials(m)) {
        out << "Delta^" << which << "_" << id.k << " = " << id.displayed.str("s", "r") << "  ["
            << (id.holds() ? "identity holds" : "MISMATCH") << "]\n";
        ok = ok && id.holds();
      }
      const std::string prefix = "Delta^" + which + "_";
      for (const auto& script : builtin_positivity_scripts()) {
        if (script.name.rfind(prefix, 0) != 0) continue;
        auto res = run_positivity_script(script);
        out << script.name << ": " << (res.pass ? "pass" : "fail") << "\n";
        for (const auto& line : res.log) out << "  " << line << "\n";
        ok = ok && res.pass;
      }
      return ok ? kOk : kVerifyFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}

}  // namespace qgev::cli
