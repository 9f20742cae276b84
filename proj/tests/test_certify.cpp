#include <gtest/gtest.h>

#include "qgev/certify.hpp"
#include "qgev/construction.hpp"
#include "qgev/golden.hpp"
#include "support.hpp"

using qgev::AlgebraicScalar;
using qgev::ExactMatrix;
using qgev::Ordering;
using qgev::Rational;
using qgev::UniPoly;
using qgev::testing::int_poly;
using qgev::testing::Rng;

namespace {

const Rational kWidth(1, 100000000);

AlgebraicScalar root_in(const UniPoly& p, long lo, long hi) {
  return AlgebraicScalar(qgev::IsolatingInterval{Rational(lo), Rational(hi), p});
}

ExactMatrix rho1_gamma() {
  return qgev::partial_transpose(qgev::golden::rho1(), qgev::partition_of(qgev::MapKind::A_BC));
}

ExactMatrix diagonal(const std::vector<Rational>& d) {
  ExactMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = qgev::Cyc8(d[i]);
  return m;
}

}  // namespace

TEST(AlgebraicScalar, RejectsNonIsolatingInterval) {
  EXPECT_THROW(root_in(int_poly({-2, 0, 1}), -2, 2), qgev::PreconditionError);
  EXPECT_THROW(root_in(int_poly({-2, 0, 1}), 2, 3), qgev::PreconditionError);
  EXPECT_NO_THROW(root_in(int_poly({-2, 0, 1}), 1, 2));
}

TEST(SmallestEigenvalue, Examples) {
  auto one = qgev::smallest_eigenvalue(ExactMatrix::identity(8), kWidth);
  ASSERT_TRUE(one.exact().has_value());
  EXPECT_EQ(*one.exact(), Rational(1));

  auto lam = qgev::smallest_eigenvalue(qgev::golden::rho1(), kWidth);
  EXPECT_LE(lam.interval().width(), kWidth);
  EXPECT_GE(lam.interval().lo, Rational(122, 1000000));
  EXPECT_LE(lam.interval().hi, Rational(124, 1000000));

  auto lg = qgev::smallest_eigenvalue(rho1_gamma(), kWidth);
  EXPECT_GE(lg.interval().lo, Rational(34, 100000));
  EXPECT_LE(lg.interval().hi, Rational(36, 100000));

  EXPECT_THROW(qgev::smallest_eigenvalue(qgev::testing::int_matrix({{0, 1}, {0, 0}}), kWidth),
               qgev::PreconditionError);
}

TEST(StrictLess, Examples) {
  auto lam = qgev::smallest_eigenvalue(qgev::golden::rho1(), kWidth);
  auto lg = qgev::smallest_eigenvalue(rho1_gamma(), kWidth);
  EXPECT_TRUE(qgev::strict_less(lam, lg));
  EXPECT_FALSE(qgev::strict_less(lg, lam));
  EXPECT_EQ(qgev::sign(lam), 1);

  auto one = AlgebraicScalar::from_rational(Rational(1));
  auto two = AlgebraicScalar::from_rational(Rational(2));
  EXPECT_TRUE(qgev::strict_less(one, two));

  auto r2 = root_in(int_poly({-2, 0, 1}), 1, 2);
  EXPECT_EQ(qgev::compare(r2, r2), Ordering::equal);
  EXPECT_FALSE(qgev::strict_less(r2, r2));
  // same number, different defining polynomial and interval
  auto r2b = root_in(int_poly({-2, 0, 1}) * int_poly({-5, 1}), 1, 3);
  EXPECT_EQ(qgev::compare(r2, r2b), Ordering::equal);
  // close but distinct: sqrt2 vs 1414/1000
  EXPECT_EQ(qgev::compare(r2, AlgebraicScalar::from_rational(Rational(1414, 1000))), Ordering::greater);
}

TEST(ShiftedRank, Examples) {
  auto lam = qgev::smallest_eigenvalue(qgev::golden::rho1(), kWidth);
  EXPECT_EQ(qgev::shifted_rank(qgev::golden::rho1(), lam), 7u);
  EXPECT_EQ(qgev::shifted_rank(rho1_gamma(), lam), 8u);
  EXPECT_EQ(qgev::shifted_rank(ExactMatrix::identity(8), AlgebraicScalar::from_rational(Rational(1))), 0u);
  EXPECT_EQ(qgev::shifted_rank(diagonal({1, 1, 3, 5}), AlgebraicScalar::from_rational(Rational(1))), 2u);
}

TEST(ShiftedPsd, Examples) {
  auto lam = qgev::smallest_eigenvalue(qgev::golden::rho1(), kWidth);
  auto lg = qgev::smallest_eigenvalue(rho1_gamma(), kWidth);
  EXPECT_TRUE(qgev::shifted_psd(qgev::golden::rho1(), lam));
  EXPECT_TRUE(qgev::shifted_psd(rho1_gamma(), lam));
  EXPECT_EQ(qgev::compare(lam, lg), Ordering::less);  // strict case
  EXPECT_FALSE(qgev::shifted_psd(ExactMatrix::identity(8), AlgebraicScalar::from_rational(Rational(2))));
  EXPECT_TRUE(qgev::shifted_psd(ExactMatrix::identity(8), AlgebraicScalar::from_rational(Rational(1))));
}

TEST(RootMultiplicity, Examples) {
  UniPoly p = int_poly({-1, 1}) * int_poly({-1, 1}) * int_poly({-1, 1}) * int_poly({-2, 0, 1});
  EXPECT_EQ(qgev::root_multiplicity(p, AlgebraicScalar::from_rational(Rational(1))), 3);
  EXPECT_EQ(qgev::root_multiplicity(p, root_in(int_poly({-2, 0, 1}), 1, 2)), 1);
  EXPECT_EQ(qgev::root_multiplicity(p, AlgebraicScalar::from_rational(Rational(3))), 0);
}

TEST(PositivityScripts, AllBuiltinScriptsPass) {
  auto scripts = qgev::builtin_positivity_scripts();
  ASSERT_EQ(scripts.size(), 8u);
  for (const auto& s : scripts) {
    auto r = qgev::run_positivity_script(s);
    EXPECT_TRUE(r.pass) << s.name << ": " << r.residual;
    EXPECT_TRUE(r.terminal.has_value()) << s.name;
  }
}

TEST(PositivityScripts, TerminalPolynomials) {
  auto scripts = qgev::builtin_positivity_scripts();
  auto find = [&](const std::string& n) {
    for (const auto& s : scripts)
      if (s.name == n) return qgev::run_positivity_script(s);
    throw std::runtime_error("no script " + n);
  };
  auto b4 = find("Delta^B_4");
  ASSERT_TRUE(b4.pass);
  EXPECT_EQ(*b4.terminal, int_poly({1, 0, 14, -4, 2}));
  EXPECT_EQ(qgev::sturm_count(*b4.terminal, Rational(0), std::nullopt), 0);
  auto c4 = find("Delta^C_4");
  ASSERT_TRUE(c4.pass);
  EXPECT_EQ(*c4.terminal, int_poly({6, -16, 13}));
  EXPECT_EQ(qgev::sturm_count(*c4.terminal, std::nullopt, std::nullopt), 0);
}

TEST(PositivityScripts, CorruptedRemainderFailsAtSplitSquares) {
  auto scripts = qgev::builtin_positivity_scripts();
  for (const auto& original : scripts) {
    auto s = original;
    bool patched = false;
    for (auto& st : s.steps)
      if (auto* sp = std::get_if<qgev::step::SplitSquares>(&st)) {
        sp->remainder += qgev::BiPoly<Rational>(Rational(1));
        patched = true;
      }
    ASSERT_TRUE(patched);
    auto r = qgev::run_positivity_script(s);
    EXPECT_FALSE(r.pass) << s.name;
    ASSERT_TRUE(r.failed_step.has_value());
    EXPECT_TRUE(std::holds_alternative<qgev::step::SplitSquares>(s.steps[*r.failed_step])) << s.name;
    EXPECT_FALSE(r.residual.empty());
  }
}

TEST(PositivityScripts, RejectsWrongFactorAndUnsupportedBound) {
  auto scripts = qgev::builtin_positivity_scripts();
  auto s = scripts[0];
  std::get<qgev::step::FactorOutS>(s.steps[0]).factor = Rational(5);
  auto r = qgev::run_positivity_script(s);
  EXPECT_FALSE(r.pass);

  // a terminal polynomial with a positive root must be refused
  auto t = scripts[3];
  std::get<qgev::step::UnivariatePositive>(t.steps.back()).q = int_poly({-1, 0, 1});
  EXPECT_FALSE(qgev::run_positivity_script(t).pass);

  // a script that stops early never concludes
  auto u = scripts[1];
  u.steps.pop_back();
  EXPECT_FALSE(qgev::run_positivity_script(u).pass);
}

TEST(Report, TextAndVerdicts) {
  qgev::CertificateReport r;
  r.add("a", true, "ok");
  r.skip("b", "not requested");
  EXPECT_TRUE(r.overall());
  r.add("c", false, "broken");
  EXPECT_FALSE(r.overall());
  EXPECT_EQ(r.failures(), 1u);
  EXPECT_EQ(r.first_failure()->name, "c");
  std::string text = r.text();
  EXPECT_NE(text.find("[SKIP] b"), std::string::npos);
  EXPECT_NE(text.find("overall: fail"), std::string::npos);
}

// ---------------------------------------------------------------------------
// Properties

TEST(CertifyProperty, StrictLessIrreflexiveAndTransitive) {
  Rng rng(41);
  for (int n = 0; n < 220; ++n) {
    std::vector<AlgebraicScalar> xs;
    for (int k = 0; k < 3; ++k) {
      // mix of rational points and square roots
      long v = qgev::testing::uniform(rng, 2, 50);
      if (k % 2 == 0)
        xs.push_back(root_in(int_poly({-v, 0, 1}), 1, 8));
      else
        xs.push_back(AlgebraicScalar::from_rational(qgev::testing::random_rational(rng, 40, 7)));
    }
    for (const auto& x : xs) ASSERT_FALSE(qgev::strict_less(x, x));
    for (const auto& x : xs)
      for (const auto& y : xs)
        for (const auto& z : xs)
          if (qgev::strict_less(x, y) && qgev::strict_less(y, z)) {
            ASSERT_TRUE(qgev::strict_less(x, z));
          }
    for (const auto& x : xs)
      for (const auto& y : xs) {
        Ordering a = qgev::compare(x, y), b = qgev::compare(y, x);
        ASSERT_EQ(a == Ordering::less, b == Ordering::greater);
        ASSERT_EQ(a == Ordering::equal, b == Ordering::equal);
      }
  }
}

TEST(CertifyProperty, ShiftedPsdOnDiagonalMatrices) {
  Rng rng(42);
  for (int n = 0; n < 220; ++n) {
    std::vector<Rational> d;
    for (int k = 0; k < 4; ++k) d.push_back(qgev::testing::random_rational(rng, 20, 5));
    ExactMatrix h = diagonal(d);
    Rational lo = *std::min_element(d.begin(), d.end());
    Rational gap(1);
    for (const auto& v : d)
      if (v != lo) gap = std::min(gap, v - lo);
    auto mu = qgev::smallest_eigenvalue(h, kWidth);
    ASSERT_EQ(mu.exact(), std::optional<Rational>(lo));
    ASSERT_TRUE(qgev::shifted_psd(h, mu));
    ASSERT_FALSE(qgev::shifted_psd(h, AlgebraicScalar::from_rational(lo + gap / Rational(2))));
    // rank identity
    int mult = static_cast<int>(std::count(d.begin(), d.end(), lo));
    ASSERT_EQ(qgev::shifted_rank(h, mu) + static_cast<std::size_t>(mult), 4u);
  }
}

TEST(CertifyProperty, RankPlusMultiplicityOnPipelineMatrices) {
  const ExactMatrix mats[] = {qgev::golden::rho1(), rho1_gamma()};
  for (const auto& h : mats) {
    UniPoly f = qgev::charpoly(h);
    // walk all eight eigenvalues upward
    Rational lower(-1);
    int seen = 0;
    while (seen < 8) {
      auto iv = qgev::isolate_smallest_root(f, lower, kWidth);
      AlgebraicScalar lam(iv);
      int m = qgev::root_multiplicity(f, lam);
      ASSERT_EQ(m, 1);
      ASSERT_EQ(qgev::shifted_rank(h, lam) + static_cast<std::size_t>(m), h.rows());
      lower = iv.hi;
      seen += m;
    }
  }
}
