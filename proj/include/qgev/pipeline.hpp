#pragma once

// End-to-end certificate chain for the witness and the counterexample state.

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qgev/certify.hpp"
#include "qgev/construction.hpp"
#include "qgev/golden.hpp"
#include "qgev/linalg.hpp"
#include "qgev/poly.hpp"
#include "qgev/tensor.hpp"

namespace qgev {

struct VerifyConfig {
  Rational width{Rational(1, 100000000)};
  std::size_t samples = 1000;
  std::uint64_t seed = 20240611;
};

/// Objects the chain consumes. Defaults are the constructed witness and the
/// embedded reference data; tests substitute corrupted copies.
struct VerifyInputs {
  ExactMatrix witness;
  ExactMatrix golden_witness;
  ExactMatrix golden_rho1;
  UniPoly golden_charpoly_rho1;
  UniPoly golden_charpoly_rho1_gamma;

  static VerifyInputs builtin() {
    return {build_witness(), golden::witness(), golden::rho1(), golden::charpoly_rho1(),
            golden::charpoly_rho1_gamma()};
  }
};

/// The certified objects of the final state rho = rho1 - lambda Id.
struct FinalState {
  ExactMatrix rho1;
  ExactMatrix rho1_gamma;
  AlgebraicScalar lambda;
  AlgebraicScalar lambda_gamma;
};

namespace detail {

inline std::string entry_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

/// Empty when equal, otherwise a description of the first differing entry.
inline std::string first_difference(const ExactMatrix& got, const ExactMatrix& want) {
  if (got.rows() != want.rows() || got.cols() != want.cols())
    return "shape " + std::to_string(got.rows()) + "x" + std::to_string(got.cols()) + " vs " +
           std::to_string(want.rows()) + "x" + std::to_string(want.cols());
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j)
      if (!(got(i, j) == want(i, j)))
        return "entry " + entry_name(i, j) + ": constructed " + got(i, j).str() + ", reference " + want(i, j).str();
  return {};
}

inline std::string first_coeff_difference(const UniPoly& got, const UniPoly& want) {
  const int deg = std::max(got.degree(), want.degree());
  for (int k = 0; k <= deg; ++k)
    if (got.coeff(k) != want.coeff(k))
      return "coefficient of x^" + std::to_string(k) + ": computed " + got.coeff(k).str() + ", reference " +
             want.coeff(k).str();
  return {};
}

inline std::string interval_text(const AlgebraicScalar& x) {
  std::ostringstream os;
  os.precision(10);
  const auto& iv = x.interval();
  os << "(" << iv.lo.to_double() << ", " << iv.hi.to_double() << "]";
  return os.str();
}

inline bool inside(const AlgebraicScalar& x, const Rational& lo, const Rational& hi) {
  return x.interval().lo >= lo && x.interval().hi <= hi;
}

inline ExactMatrix random_rational_matrix(std::mt19937_64& rng, std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long p = static_cast<long>(rng() % 19) - 9, q = static_cast<long>(rng() % 5) + 1;
      long r = static_cast<long>(rng() % 19) - 9;
      m(i, j) = Cyc8::from_gauss(Rational(p, q), Rational(r, q));
    }
  return m;
}

inline PartitionSpec gamma_spec() { return partition_of(MapKind::A_BC); }

}  // namespace detail

inline void check_scalar_layer(CertificateReport& rep) {
  auto a = alphas(), b = alphas_from_radicals();
  bool same = a == b;
  bool squares = true;
  for (std::size_t k = 0; k < a.size(); ++k) squares = squares && a[k] * a[k] == b[k] * b[k];
  rep.add("scalar: alpha zeta-encoding", same && squares,
          same && squares ? "alpha_1..alpha_8 equal their radical forms, squares agree"
                          : "zeta encoding differs from the radical forms");
  Cyc8 u(Rational(3, 2), Rational(-1), Rational(2, 7), Rational(5));
  bool field = u * u.inverse() == Cyc8(1) && u.conj().conj() == u && (u * u.conj()).is_real();
  rep.add("scalar: field self-check", field, "u*u^-1 = 1, conj involutive, u*conj(u) real");
}

inline void check_linalg_layer(CertificateReport& rep) {
  ExactMatrix m{{Cyc8(2), Cyc8(-1), Cyc8(0)}, {Cyc8(-1), Cyc8(2), Cyc8(-1)}, {Cyc8(0), Cyc8(-1), Cyc8(2)}};
  bool det_ok = determinant(m) == Cyc8(4) && determinant_expansion(m) == Cyc8(4);
  auto cp = charpoly(m);
  bool cp_ok = cp == UniPoly({Rational(-4), Rational(10), Rational(-6), Rational(1)});
  bool rank_ok = exact_rank(m) == 3 && exact_rank(ExactMatrix(3, 3)) == 0;
  rep.add("linalg: self-check", det_ok && cp_ok && rank_ok, "det 4, charpoly x^3-6x^2+10x-4, rank 3");
}

inline void check_witness(CertificateReport& rep, const VerifyInputs& in) {
  const ExactMatrix& w = in.witness;
  std::string diff = detail::first_difference(w, in.golden_witness);
  rep.add("witness: golden match", diff.empty(), diff.empty() ? "all 64 entries equal the reference" : diff);
  Cyc8 tr = w.trace();
  rep.add("witness: trace", tr == Cyc8(17), "Tr W = " + tr.str(), {{"trace", tr.str()}});
  rep.add("witness: self-adjoint", w.is_hermitian(), "W = W^*");
  if (!w.is_hermitian()) {
    rep.add("witness: not PSD", false, "not Hermitian");
    return;
  }
  auto cert = psd_certificate(w);
  rep.add("witness: not PSD", !cert.psd, cert.evidence);
}

inline void check_maps(CertificateReport& rep, const VerifyInputs& in, const VerifyConfig& cfg) {
  WitnessBundle wb{in.witness};
  std::mt19937_64 rng(cfg.seed);
  for (MapKind m : kAllMaps) {
    std::string bad;
    for (std::size_t i = 0; i < 2 && bad.empty(); ++i)
      for (std::size_t j = 0; j < 2 && bad.empty(); ++j) {
        auto d = detail::first_difference(wb.choi(m, matrix_unit(i, j)), wb.image(m, matrix_unit(i, j)));
        if (!d.empty()) bad = "E" + std::to_string(i) + std::to_string(j) + ": " + d;
      }
    rep.add("maps: " + to_string(m) + " on matrix units", bad.empty(),
            bad.empty() ? "closed form = Choi extraction on E00, E01, E10, E11" : bad);
    ExactMatrix x = detail::random_rational_matrix(rng, 2);
    auto d = detail::first_difference(wb.choi(m, x), wb.image(m, x));
    rep.add("maps: " + to_string(m) + " on random X", d.empty(), d.empty() ? "agree on a random rational X" : d);
  }
}

inline void check_minors(CertificateReport& rep) {
  for (MapKind m : {MapKind::B_CA, MapKind::C_AB}) {
    const std::string letter = m == MapKind::B_CA ? "B" : "C";
    for (const auto& id : minor_polynomials(m)) {
      rep.add("minors: Delta^" + letter + "_" + std::to_string(id.k) + " identity", id.holds(),
              id.holds() ? "= " + id.displayed.str("s", "r") : "residual " + id.residual.str());
    }
  }
}

inline void check_scripts(CertificateReport& rep) {
  for (const auto& script : builtin_positivity_scripts()) {
    auto res = run_positivity_script(script);
    std::string ev = res.log.empty() ? "" : res.log.back();
    std::vector<std::pair<std::string, std::string>> exact;
    if (res.terminal) exact.emplace_back("terminal", res.terminal->str("t"));
    rep.add("positivity: " + script.name, res.pass, res.pass ? ev : ev + " | " + res.residual, std::move(exact));
  }
  for (const auto& b : boundary_images()) {
    auto cert = psd_certificate(b.image);
    std::string ev = cert.evidence;
    if (b.beyond_closed_forms) ev += " (direction E_11, checked in addition to the alpha family)";
    rep.add("boundary: " + b.name + " PSD", cert.psd, ev);
  }
}

inline void check_sampling(CertificateReport& rep, const VerifyInputs& in, const VerifyConfig& cfg) {
  const char* names[] = {"A", "B", "C"};
  for (std::size_t s = 0; s < 3; ++s) {
    const std::string name = std::string("sampling: block positivity S=") + names[s];
    if (cfg.samples == 0) {
      rep.skip(name, "samples = 0");
      continue;
    }
    auto res = block_positivity_sample(in.witness, partition_of(kAllMaps[s]), cfg.samples, cfg.seed + s);
    rep.add(name, res.all_nonnegative,
            std::to_string(res.samples) + " product vectors, min pairing " + res.min_value->str(),
            {{"min", res.min_value->str()}});
  }
}

inline void check_product_vectors(CertificateReport& rep, const VerifyInputs& in, const ConstructionBundle& cb) {
  const auto& pv = cb.vectors;
  ExactMatrix wg = partial_transpose(in.witness.with_dims(kQubits3), detail::gamma_spec());
  std::string bad_w, bad_wg;
  for (std::size_t k = 0; k < pv.z.size(); ++k) {
    Cyc8 v = expectation(in.witness, pv.z[k]);
    if (!v.is_zero() && bad_w.empty()) bad_w = "k=" + std::to_string(k + 1) + ": " + v.str();
    Cyc8 g = expectation(wg, pv.z_conj[k]);
    if (!g.is_zero() && bad_wg.empty()) bad_wg = "k=" + std::to_string(k + 1) + ": " + g.str();
  }
  rep.add("vectors: <z_k|W|z_k> = 0", bad_w.empty(), bad_w.empty() ? "all 8 vanish" : bad_w);
  rep.add("vectors: <conj z_k|W^G|conj z_k> = 0", bad_wg.empty(), bad_wg.empty() ? "all 8 vanish" : bad_wg);
  std::size_t r1 = exact_rank(columns_matrix(pv.z)), r2 = exact_rank(columns_matrix(pv.z_conj));
  rep.add("vectors: spanning", r1 == 8 && r2 == 8,
          "rank{x_k (x) y_k} = " + std::to_string(r1) + ", rank{conj x_k (x) y_k} = " + std::to_string(r2));
  bool norms = cb.norm_sum_1 == Cyc8(848) && cb.norm_sum_2 == Cyc8(28160);
  rep.add("vectors: norm sums", norms, "k=1..4: " + cb.norm_sum_1.str() + ", k=5..8: " + cb.norm_sum_2.str(),
          {{"sum_1_4", cb.norm_sum_1.str()}, {"sum_5_8", cb.norm_sum_2.str()}});
}

inline void check_states(CertificateReport& rep, const VerifyInputs& in, const ConstructionBundle& cb,
                         const ExactMatrix& rho1_gamma) {
  rep.add("states: traces", cb.sigma1.trace() == Cyc8(1) && cb.sigma2.trace() == Cyc8(1) && cb.rho1.trace() == Cyc8(1),
          "Tr sigma1 = " + cb.sigma1.trace().str() + ", Tr sigma2 = " + cb.sigma2.trace().str() +
              ", Tr rho1 = " + cb.rho1.trace().str());
  std::string diff = detail::first_difference(cb.rho1, in.golden_rho1);
  rep.add("states: rho1 golden match", diff.empty(), diff.empty() ? "all 64 entries equal the reference" : diff);
  Cyc8 p = pairing(cb.rho1, in.witness);
  rep.add("states: <rho1, W> = 0", p.is_zero(), "<rho1, W> = " + p.str(), {{"pairing", p.str()}});
  auto c1 = psd_certificate(cb.rho1);
  rep.add("states: rho1 PSD", c1.psd, c1.evidence);
  auto c2 = psd_certificate(rho1_gamma);
  rep.add("states: rho1^G PSD (PPT across A-BC)", c2.psd, c2.evidence);
  std::size_t r1 = exact_rank(cb.rho1), r2 = exact_rank(rho1_gamma);
  rep.add("states: ranks", r1 == 8 && r2 == 8,
          "rank rho1 = " + std::to_string(r1) + ", rank rho1^G = " + std::to_string(r2));
}

inline void check_charpolys(CertificateReport& rep, const VerifyInputs& in, const ExactMatrix& rho1,
                            const ExactMatrix& rho1_gamma) {
  struct Item {
    const char* name;
    const ExactMatrix* m;
    const UniPoly* golden;
  };
  for (const Item& it : {Item{"rho1", &rho1, &in.golden_charpoly_rho1},
                         Item{"rho1^G", &rho1_gamma, &in.golden_charpoly_rho1_gamma}}) {
    UniPoly f = charpoly(*it.m);
    UniPoly prim = primitive_integer_form(f);
    std::string diff = detail::first_coeff_difference(prim, *it.golden);
    rep.add(std::string("charpoly: ") + it.name + " golden match", diff.empty(),
            diff.empty() ? "primitive integer form equals the reference digit for digit" : diff,
            {{"constant", prim.coeff(0).str()}, {"leading", prim.lead().str()}});
    Cyc8 det = determinant(*it.m);
    bool ok = Cyc8(-f.coeff(7)) == it.m->trace() && Cyc8(f.coeff(0)) == det;
    rep.add(std::string("charpoly: ") + it.name + " trace/det consistency", ok,
            "-c7 = Tr, c0 = det = " + det.str());
  }
}

inline std::optional<FinalState> check_spectrum(CertificateReport& rep, const ExactMatrix& rho1,
                                                const ExactMatrix& rho1_gamma, const VerifyConfig& cfg) {
  UniPoly f = charpoly(rho1);
  SturmSequence sf(f);
  int pos = sf.count(Rational(0), std::nullopt);
  int nonpos = sf.count(std::nullopt, Rational(0));
  rep.add("spectrum: f_rho1 root count", pos == 8 && nonpos == 0,
          "Sturm: " + std::to_string(pos) + " in (0, inf), " + std::to_string(nonpos) + " in (-inf, 0]");
  UniPoly g = gcd(f, f.derivative());
  rep.add("spectrum: f_rho1 squarefree", g.degree() == 0, "gcd(f, f') = " + g.str());

  AlgebraicScalar lam = smallest_eigenvalue(rho1, cfg.width);
  AlgebraicScalar lamg = smallest_eigenvalue(rho1_gamma, cfg.width);
  bool in1 = detail::inside(lam, Rational(122, 1000000), Rational(124, 1000000)) && lam.interval().width() <= cfg.width;
  rep.add("spectrum: lambda_rho1 location", in1, "isolated in " + detail::interval_text(lam) + " within (1.22e-4, 1.24e-4)",
          {{"lo", lam.interval().lo.str()}, {"hi", lam.interval().hi.str()}});
  bool in2 = detail::inside(lamg, Rational(34, 100000), Rational(36, 100000)) && lamg.interval().width() <= cfg.width;
  rep.add("spectrum: lambda_rho1^G location", in2,
          "isolated in " + detail::interval_text(lamg) + " within (3.4e-4, 3.6e-4)",
          {{"lo", lamg.interval().lo.str()}, {"hi", lamg.interval().hi.str()}});
  int s = sign(lam);
  Ordering ord = compare(lam, lamg);
  rep.add("spectrum: 0 < lambda_rho1 < lambda_rho1^G", s > 0 && ord == Ordering::less,
          std::string("sign ") + std::to_string(s) + ", comparison " + to_string(ord));
  return FinalState{rho1, rho1_gamma, lam, lamg};
}

inline void check_final_state(CertificateReport& rep, const VerifyInputs& in, const FinalState& fs) {
  const Cyc8 p = pairing(fs.rho1, in.witness);
  const Cyc8 tr = in.witness.trace();
  // <rho1 - lam Id, W> = <rho1, W> - lam Tr W
  bool exact_ok = p.is_zero() && tr.is_rational();
  std::string form = exact_ok ? "-" + tr.str() + "*lambda" : p.str() + " - " + tr.str() + "*lambda";
  int sgn = exact_ok ? -tr.as_rational().sign() * sign(fs.lambda) : 0;
  rep.add("final: <rho, W> < 0", exact_ok && tr == Cyc8(17) && sgn < 0,
          "<rho, W> = " + form + ", lambda in " + detail::interval_text(fs.lambda) + ", sign " + std::to_string(sgn),
          {{"pairing", form}});
  bool psd1 = shifted_psd(fs.rho1, fs.lambda);
  bool psd2 = shifted_psd(fs.rho1_gamma, fs.lambda);
  rep.add("final: rho PSD", psd1, "lambda <= lambda_min(rho1)");
  rep.add("final: rho^G PSD", psd2, "lambda <= lambda_min(rho1^G)");
  std::size_t r1 = shifted_rank(fs.rho1, fs.lambda), r2 = shifted_rank(fs.rho1_gamma, fs.lambda);
  rep.add("final: ranks", r1 == 7 && r2 == 8,
          "rank rho = " + std::to_string(r1) + ", rank rho^G = " + std::to_string(r2),
          {{"rank_rho", std::to_string(r1)}, {"rank_rho_gamma", std::to_string(r2)}});
  const auto& iv = fs.lambda.interval();
  Rational mu_lo = (Rational(1) - Rational(8) * iv.lo).inverse();
  Rational mu_hi = (Rational(1) - Rational(8) * iv.hi).inverse();
  std::ostringstream os;
  os.precision(12);
  os << "Tr rho = 1 - 8*lambda; rho/Tr rho = segment_state(mu), mu = 1/(1-8*lambda) in (" << mu_lo.to_double() << ", "
     << mu_hi.to_double() << "]";
  rep.add("final: normalization", true, os.str(), {{"trace", "1 - 8*lambda"}, {"mu", "1/(1 - 8*lambda)"}});
  bool all = rep.overall();
  rep.add("final: verdict", all,
          all ? "PPT mixture that is not bi-separable" : "chain incomplete: an earlier check failed");
}

/// Runs every check in a fixed order; failures are verdicts, not exceptions.
inline CertificateReport verify_all(const VerifyConfig& cfg = {}, const VerifyInputs& in = VerifyInputs::builtin()) {
  CertificateReport rep;
  auto guarded = [&rep](const std::string& group, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      rep.add(group + ": exception", false, e.what());
    }
  };
  guarded("scalar", [&] { check_scalar_layer(rep); });
  guarded("linalg", [&] { check_linalg_layer(rep); });
  guarded("witness", [&] { check_witness(rep, in); });
  guarded("maps", [&] { check_maps(rep, in, cfg); });
  guarded("minors", [&] { check_minors(rep); });
  guarded("positivity", [&] { check_scripts(rep); });
  guarded("sampling", [&] { check_sampling(rep, in, cfg); });

  std::optional<ConstructionBundle> cb;
  guarded("vectors", [&] {
    cb = build_states();
    check_product_vectors(rep, in, *cb);
  });
  if (!cb) return rep;
  const ExactMatrix rho1_gamma = partial_transpose(cb->rho1, detail::gamma_spec());
  guarded("states", [&] { check_states(rep, in, *cb, rho1_gamma); });
  guarded("charpoly", [&] { check_charpolys(rep, in, cb->rho1, rho1_gamma); });
  std::optional<FinalState> fs;
  guarded("spectrum", [&] { fs = check_spectrum(rep, cb->rho1, rho1_gamma, cfg); });
  if (fs)
    guarded("final", [&] { check_final_state(rep, in, *fs); });
  else
    rep.add("final: verdict", false, "spectrum certificates unavailable");
  return rep;
}

}  // namespace qgev
