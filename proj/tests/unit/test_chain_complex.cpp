#include <cmath>
#include <random>

#include "doctest.h"
#include "random_complex.hpp"
#include "torsionlab/chain_complex.hpp"

using namespace torsionlab;

namespace {

ChainComplexData make(std::vector<std::size_t> ranks, std::vector<RationalMatrix> boundaries) {
  return {std::move(ranks), std::move(boundaries)};
}

}  // namespace

TEST_CASE("validate_complex") {
  CHECK(validate_complex(make({2, 3}, {RationalMatrix(2, 3)})).ok);
  CHECK(validate_complex(make({1, 1}, {RationalMatrix::from_rows({{2}})})).ok);
  const auto bad = validate_complex(make({1, 1, 1}, {RationalMatrix::from_rows({{1}}), RationalMatrix::from_rows({{1}})}));
  CHECK_FALSE(bad.ok);
  CHECK(bad.degree == 1);
  const auto dims = validate_complex(make({1, 2}, {RationalMatrix(1, 3)}));
  CHECK_FALSE(dims.ok);
  CHECK(dims.degree == 1);
}

TEST_CASE("betti ranks") {
  CHECK(betti_ranks(make({1, 1}, {RationalMatrix::from_rows({{1}})})) == std::vector<std::size_t>{0, 0});
  CHECK(betti_ranks(make({2, 3, 1}, {RationalMatrix(2, 3), RationalMatrix(3, 1)})) ==
        std::vector<std::size_t>{2, 3, 1});
}

TEST_CASE("torsion of a one-step complex") {
  const auto c = make({1, 1}, {RationalMatrix::from_rows({{2}})});
  const auto t = torsion_log(c, empty_homology(c));
  CHECK(t.value() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(t.magnitude.is_exact());
  CHECK(t.magnitude.square == 4);
}

TEST_CASE("torsion rejects a basis that does not span") {
  const auto c = make({2, 1}, {RationalMatrix::from_rows({{1}, {0}})});
  auto h = make_homology({RationalMatrix::from_rows({{1}, {0}}), RationalMatrix(1, 0)});
  CHECK_THROWS_AS(torsion_log(c, h), std::invalid_argument);
}

TEST_CASE("default b uses rref pivots") {
  const auto c = make({2, 3}, {RationalMatrix::from_rows({{0, 1, 1}, {0, 2, 2}})});
  const auto b = default_b(c);
  CHECK(b[1] == RationalMatrix::from_rows({{0}, {1}, {0}}));
}

TEST_CASE("mapping cylinder examples") {
  const auto point = make({1}, {});
  const auto cyl = mapping_cylinder(point);
  CHECK(cyl.complex.ranks == std::vector<std::size_t>{2, 1});
  CHECK(cyl.complex.boundaries[0] == RationalMatrix::from_rows({{1}, {-1}}));
  CHECK(validate_complex(cyl.complex).ok);

  const auto circle_like = make({2, 3, 1}, {RationalMatrix::from_rows({{0, -1, 0}, {0, 1, 0}}),
                                           RationalMatrix::from_rows({{1}, {0}, {-1}})});
  REQUIRE(validate_complex(circle_like).ok);
  CHECK(mapping_cylinder(circle_like).complex.ranks == std::vector<std::size_t>{4, 8, 5, 1});
}

TEST_CASE("dual of dual is the identity") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto rc = testing::random_complex(rng);
    const auto dd = dual_complex(dual_complex(rc.complex));
    CHECK(dd.ranks == rc.complex.ranks);
    for (std::size_t q = 0; q < dd.boundaries.size(); ++q) CHECK(dd.boundaries[q] == rc.complex.boundaries[q]);
    CHECK(validate_complex(dual_complex(rc.complex)).ok);
  }
}

TEST_CASE("random complexes: invariance, volume law, sums") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const auto rc = testing::random_complex(rng);
    REQUIRE(validate_complex(rc.complex).ok);
    REQUIRE(validate_homology(rc.complex, rc.homology).ok);
    const auto base = torsion_log(rc.complex, rc.homology);

    const auto h2 = testing::perturb_lifts(rng, rc.complex, rc.homology);
    const auto b2 = testing::random_b(rng, rc.complex);
    CHECK(same_magnitude(torsion_log(rc.complex, h2, b2).magnitude, base.magnitude));

    auto h3 = rc.homology;
    LogMagnitude expected = base.magnitude;
    for (int q = 0; q <= rc.complex.length(); ++q) {
      const auto r = h3.rank(q);
      if (r == 0) continue;
      const auto a = testing::random_invertible(rng, r);
      h3.cycles[q] = h3.cycles[q] * a;
      const auto f = LogMagnitude::from_rational(a.determinant());
      expected = expected * (q % 2 == 0 ? f : f.inverse());
    }
    CHECK(same_magnitude(torsion_log(rc.complex, h3).magnitude, expected));

    const auto other = testing::random_complex(rng);
    const auto sum = direct_sum(rc.complex, other.complex);
    const auto hsum = direct_sum(rc.complex, rc.homology, other.complex, other.homology);
    CHECK(same_magnitude(torsion_log(sum, hsum).magnitude,
                         base.magnitude * torsion_log(other.complex, other.homology).magnitude));
  }
}

TEST_CASE("random complexes: mapping cylinder identity") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 30; ++i) {
    const auto rc = testing::random_complex(rng);
    const auto cyl = mapping_cylinder(rc.complex);
    REQUIRE(validate_complex(cyl.complex).ok);
    auto hcyl = push_forward(cyl, rc.homology);
    CHECK(same_magnitude(torsion_log(cyl.complex, hcyl).magnitude, torsion_log(rc.complex, rc.homology).magnitude));
    for (int q = 0; q <= cyl.complex.length(); ++q) {
      if (hcyl.rank(q) > 0) hcyl.cycles[q] = hcyl.cycles[q] * testing::random_invertible(rng, hcyl.rank(q));
    }
    hcyl = testing::perturb_lifts(rng, cyl.complex, hcyl);
    const auto det_i = induced_determinant_log(rc.complex, rc.homology, cyl, hcyl);
    CHECK(same_magnitude(torsion_log(cyl.complex, hcyl).magnitude,
                         torsion_log(rc.complex, rc.homology).magnitude / det_i));
  }
}

TEST_CASE("random complexes: duality of degree determinants") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    testing::RandomComplexOptions opt;
    opt.odd_length_only = i % 2 == 0;
    const auto rc = testing::random_complex(rng, opt);
    const int m = rc.complex.length();
    const auto d = degree_determinants(rc.complex, rc.homology);
    const auto dual = dual_complex(rc.complex);
    const auto bases = transport_to_dual(rc.complex, rc.homology);
    REQUIRE(validate_homology(dual, bases.homology).ok);
    const auto dd = degree_determinants(dual, bases.homology, bases.b);
    for (int q = 0; q <= m; ++q) CHECK(same_magnitude(dd[m - q], d[q].inverse()));
    const auto t = torsion_log(rc.complex, rc.homology).magnitude;
    const auto td = torsion_log(dual, bases.homology, bases.b).magnitude;
    CHECK(same_magnitude(td, m % 2 == 1 ? t : t.inverse()));
  }
}

TEST_CASE("acyclic duality law by parity") {
  const auto c = make({1, 1}, {RationalMatrix::from_rows({{3}})});
  const auto t = torsion_log(c, empty_homology(c)).value();
  const auto d = dual_complex(c);
  CHECK(torsion_log(d, empty_homology(d)).value() == doctest::Approx(t).epsilon(1e-15));
  const auto c2 = make({1, 2, 1}, {RationalMatrix::from_rows({{1, 0}}), RationalMatrix::from_rows({{0}, {5}})});
  const auto t2 = torsion_log(c2, empty_homology(c2)).value();
  const auto d2 = dual_complex(c2);
  CHECK(torsion_log(d2, empty_homology(d2)).value() + t2 == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("pair sequence of a contractible relative complex") {
  // Interval [0,1] with the subcomplex {vertex 0}.
  const auto c = make({2, 1}, {RationalMatrix::from_rows({{-1}, {1}})});
  const auto s = pair_sequence(c, {{0}, {}});
  REQUIRE(validate_sequence(s).ok);
  const auto hp = make_homology({RationalMatrix::from_rows({{1}}), RationalMatrix(0, 0)});
  const auto hc = make_homology({RationalMatrix::from_rows({{1}, {0}}), RationalMatrix(1, 0)});
  const auto hq = empty_homology(s.quotient);
  CHECK(pair_sequence_torsion_log(s, hp, hc, hq).value() == doctest::Approx(0.0));
  const auto md = milnor_decomposition(s, hp, hc, hq);
  CHECK(same_magnitude(md.defect, LogMagnitude::one()));
}

TEST_CASE("pair_sequence rejects non-subcomplexes") {
  const auto c = make({2, 1}, {RationalMatrix::from_rows({{-1}, {1}})});
  CHECK_THROWS_AS(pair_sequence(c, {{}, {0}}), std::invalid_argument);
}

TEST_CASE("random sequences: Milnor additivity") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 60; ++i) {
    const bool acyclic = i % 3 == 0;
    const bool mix = i % 2 == 0;
    const auto rs = testing::random_sequence(rng, acyclic, mix);
    REQUIRE(validate_sequence(rs.sequence).ok);
    const auto md = milnor_decomposition(rs.sequence, rs.h_sub, rs.h_total, rs.h_quot);
    CHECK(same_magnitude(md.defect, LogMagnitude::one()));
    if (!mix) CHECK(same_magnitude(md.compatibility, LogMagnitude::one()));
  }
}
