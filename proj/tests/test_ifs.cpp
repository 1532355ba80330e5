#include <doctest.h>

#include <cmath>

#include "ifslab/ifs.hpp"

using namespace ifslab;
using ifs::IFSFamily;
using sym::EventuallyPeriodicWord;
using sym::Word;

namespace {

IFSFamily cantor_thirds() {
    return ifs::affine_family({1.0 / 3, 1.0 / 3}, {0.0, 2.0 / 3}, {0.0, 1.0});
}

IFSFamily triple_overlap() {
    return ifs::affine_family({1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.0, 1.0 / 3, 1.0}, {0.0, 1.5});
}

// lambda*x - (1-lambda), lambda*x + (1-lambda) at a fixed lambda
IFSFamily bc_at(double lambda) {
    return ifs::affine_family({lambda, lambda}, {-(1.0 - lambda), 1.0 - lambda}, {-1.0, 1.0});
}

}  // namespace

TEST_CASE("apply_word composes with the chain rule") {
    auto fam = cantor_thirds();
    const auto fv = ifs::apply_word(fam, {}, {1, 2}, 0.0);
    CHECK(fv.value == doctest::Approx(2.0 / 9).epsilon(1e-15));
    CHECK(fv.deriv == doctest::Approx(1.0 / 9).epsilon(1e-15));

    const auto id = ifs::apply_word(fam, {}, {}, 0.37);
    CHECK(id.value == 0.37);
    CHECK(id.deriv == 1.0);
}

TEST_CASE("projective map value at 0 is b/(b+d)") {
    auto fam = ifs::mobius_family({Mat2{2, 1, 1, 2}, Mat2{1, 1, 1, 2}});
    const auto fv = ifs::apply_word(fam, {}, {1}, 0.0);
    CHECK(fv.value == doctest::Approx(1.0 / 3).epsilon(1e-15));
}

TEST_CASE("apply_word derivative matches centered differences") {
    const double h = 1e-6;
    auto check_fd = [&](const IFSFamily& fam, const Word& w, double x, double rel_tol) {
        const auto mid = ifs::apply_word(fam, {}, w, x);
        const double fd = (ifs::apply_word(fam, {}, w, x + h).value -
                           ifs::apply_word(fam, {}, w, x - h).value) /
                          (2 * h);
        CHECK(mid.deriv == doctest::Approx(fd).epsilon(rel_tol));
    };
    check_fd(cantor_thirds(), {1, 2, 2, 1}, 0.4, 1e-6);
    auto mob = ifs::mobius_family({Mat2{3, 1, 1, 2}, Mat2{1, 1, 1, 2}});
    check_fd(mob, {1, 2}, 0.3, 1e-4);
    check_fd(mob, {2, 2, 1}, 0.7, 1e-4);
}

TEST_CASE("cylinder_interval examples") {
    auto fam = cantor_thirds();
    const auto c2 = ifs::cylinder_interval(fam, {}, {2});
    CHECK(c2.interval.lo == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(c2.interval.hi == doctest::Approx(1.0).epsilon(1e-15));
    const auto c21 = ifs::cylinder_interval(fam, {}, {2, 1});
    CHECK(c21.interval.lo == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(c21.interval.hi == doctest::Approx(7.0 / 9).epsilon(1e-15));
}

TEST_CASE("first cylinders of the overlapping triple system intersect") {
    auto fam = triple_overlap();
    const auto a = ifs::cylinder_interval(fam, {}, {1}).interval;
    const auto b = ifs::cylinder_interval(fam, {}, {2}).interval;
    // oracle: nonempty intersection of the two images
    CHECK(std::max(a.lo, b.lo) < std::min(a.hi, b.hi));
}

TEST_CASE("cylinders nest and shrink") {
    auto fam = triple_overlap();
    SplitMix64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        Word w;
        for (std::uint64_t s = 0, n = rng.next() % 6; s < n; ++s) {
            w.push_back(1 + static_cast<int>(rng.next() % 3));
        }
        const auto outer = ifs::cylinder_interval(fam, {}, w).interval;
        for (int a = 1; a <= 3; ++a) {
            Word wa = w;
            wa.push_back(a);
            const auto inner = ifs::cylinder_interval(fam, {}, wa).interval;
            CHECK(outer.lo <= inner.lo + 1e-12);
            CHECK(inner.hi <= outer.hi + 1e-12);
        }
        CHECK(outer.length() <=
              fam.domain().length() * std::pow(fam.gamma2(), w.size()) + 1e-12);
        CHECK(outer.length() >=
              fam.domain().length() * std::pow(fam.gamma1(), w.size()) - 1e-12);
    }
}

TEST_CASE("natural projection fixed points") {
    auto fam = cantor_thirds();
    const auto one = ifs::natural_projection(fam, {}, EventuallyPeriodicWord({}, {2}));
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(one.error == 0.0);
    const auto third = ifs::natural_projection(fam, {}, EventuallyPeriodicWord({1}, {2}));
    CHECK(third.value == doctest::Approx(1.0 / 3).epsilon(1e-14));

    // lambda x - (1 - lambda): fixed point of the left branch is -1
    auto bc = bc_at(0.6);
    const auto left = ifs::natural_projection(bc, {}, EventuallyPeriodicWord({}, {1}));
    CHECK(left.value == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("projection lies in every prefix cylinder") {
    auto fam = triple_overlap();
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        Word pre, per;
        for (std::uint64_t s = 0, n = rng.next() % 3; s < n; ++s) pre.push_back(1 + static_cast<int>(rng.next() % 3));
        for (std::uint64_t s = 0, n = 1 + rng.next() % 3; s < n; ++s) per.push_back(1 + static_cast<int>(rng.next() % 3));
        EventuallyPeriodicWord w(pre, per);
        const double p = ifs::natural_projection(fam, {}, w).value;
        for (std::size_t n = 0; n <= 6; ++n) {
            const auto cyl = ifs::cylinder_interval(fam, {}, sym::prefix(w, n)).interval;
            CHECK(p >= cyl.lo - 1e-10);
            CHECK(p <= cyl.hi + 1e-10);
        }
    }
}

TEST_CASE("mixed-kind projection falls back to bisection") {
    // translated projective map: no affine or matrix closed form
    auto mob = ifs::mobius_family({Mat2{3, 1, 1, 2}, Mat2{1, 1, 1, 2}});
    std::vector<ifs::MapSpec> maps;
    maps.push_back(ifs::MapSpec::translated(mob.map(1), 0));
    maps.push_back(ifs::MapSpec::translated(mob.map(2), 1));
    IFSFamily fam(std::move(maps), Interval{-0.2, 1.2}, {{-0.01, 0.01}, {-0.01, 0.01}},
                  mob.gamma1(), mob.gamma2());
    const std::vector<double> lam = {0.003, -0.007};
    const auto p = ifs::natural_projection(fam, lam, EventuallyPeriodicWord({2}, {1, 2}), 1e-12);
    // residual check: applying the period at the tail point reproduces it
    const auto tail = ifs::natural_projection(fam, lam, EventuallyPeriodicWord({}, {1, 2}), 1e-12);
    const double mapped = ifs::apply_word(fam, lam, {1, 2}, tail.value).value;
    CHECK(std::abs(mapped - tail.value) <= 1e-10);
    CHECK(p.error <= 1e-10);
    CHECK(p.value == doctest::Approx(ifs::apply_word(fam, lam, {2}, tail.value).value).epsilon(1e-12));
}

TEST_CASE("projection gradient: geometric series oracle") {
    auto base = cantor_thirds();
    auto fam = ifs::vertical_translate_family(base, 0.05);
    const std::vector<double> lam = {0.0, 0.0};

    // oracle: 60 explicit series terms for d(Pi)/d(lambda_k)
    auto series_oracle = [&](const EventuallyPeriodicWord& w, int comp) {
        double acc = 0.0, prefix_deriv = 1.0;
        EventuallyPeriodicWord cur = w;
        for (int n = 1; n <= 60; ++n) {
            const int symbol = cur.symbol_at(0);
            cur = sym::shift(cur);
            const double point = ifs::natural_projection(fam, lam, cur).value;
            acc += prefix_deriv * fam.map(symbol).dlam(point, lam, comp);
            prefix_deriv *= fam.map(symbol).dx(point, lam);
        }
        return acc;
    };

    EventuallyPeriodicWord ones({}, {1});
    const auto g1 = ifs::projection_gradient(fam, lam, ones, 40);
    CHECK(g1.gradient[0] == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(g1.gradient[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g1.gradient[0] == doctest::Approx(series_oracle(ones, 0)).epsilon(1e-12));

    EventuallyPeriodicWord two_ones({2}, {1});
    const auto g2 = ifs::projection_gradient(fam, lam, two_ones, 40);
    CHECK(g2.gradient[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g2.gradient[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(g2.gradient[0] == doctest::Approx(series_oracle(two_ones, 0)).epsilon(1e-12));
    CHECK(g2.tail_bound <= 1e-12);
}

TEST_CASE("projection gradient for an unparametrized family is empty") {
    auto fam = cantor_thirds();
    const auto g = ifs::projection_gradient(fam, {}, EventuallyPeriodicWord({}, {1}), 10);
    CHECK(g.gradient.empty());
    CHECK(g.tail_bound == 0.0);
}

TEST_CASE("projection gradient agrees with finite differences") {
    auto fam = ifs::vertical_translate_family(cantor_thirds(), 0.05);
    const double h = 1e-5;
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        Word pre{1 + static_cast<int>(rng.next() % 2)};
        EventuallyPeriodicWord w(pre, {1 + static_cast<int>(rng.next() % 2)});
        std::vector<double> lam = {0.01, -0.02};
        const auto g = ifs::projection_gradient(fam, lam, w, 45);
        for (int comp = 0; comp < 2; ++comp) {
            std::vector<double> up = lam, dn = lam;
            up[static_cast<std::size_t>(comp)] += h;
            dn[static_cast<std::size_t>(comp)] -= h;
            const double fd = (ifs::natural_projection(fam, up, w).value -
                               ifs::natural_projection(fam, dn, w).value) /
                              (2 * h);
            CHECK(std::abs(g.gradient[static_cast<std::size_t>(comp)] - fd) <=
                  g.tail_bound + 10 * h * h + 1e-9);
        }
    }
}

TEST_CASE("distortion ratio") {
    auto fam = triple_overlap();
    CHECK(ifs::distortion_ratio(fam, {}, {1, 2, 3}, 16) == 1.0);
    CHECK(ifs::distortion_ratio(fam, {}, {}, 8) == 1.0);

    auto mob = ifs::mobius_family({Mat2{3, 1, 1, 2}, Mat2{1, 1, 1, 2}});
    const double r = ifs::distortion_ratio(mob, {}, {1, 1}, 64);
    CHECK(r > 1.0);
    // bound exp(sup|f''/f'| |X| / (1 - gamma2)) from sampled quantities
    double c = 0.0;
    for (int a = 1; a <= 2; ++a) {
        for (int gp = 0; gp <= 32; ++gp) {
            const double x = gp / 32.0;
            c = std::max(c, std::abs(mob.map(a).dxx(x, {}) / mob.map(a).dx(x, {})));
        }
    }
    CHECK(r < std::exp(c / (1.0 - mob.gamma2())));
}

TEST_CASE("exact overlap detection") {
    auto fam = triple_overlap();
    const auto pairs = ifs::detect_exact_overlap(fam, {}, 2);
    const std::pair<Word, Word> expected{{1, 3}, {2, 1}};
    CHECK(std::find(pairs.begin(), pairs.end(), expected) != pairs.end());

    // oracle: brute force over all word pairs up to depth 3
    auto compose = [](const IFSFamily& f, const Word& w) {
        double s = 1.0, o = 0.0;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            const auto co = *f.map(*it).affine_coeffs({});
            s = co.first * s;
            o = co.first * o + co.second;
        }
        return std::pair<double, double>{s, o};
    };
    auto brute_force = [&](const IFSFamily& f, int m, int depth) {
        std::vector<Word> words;
        for (int len = 1; len <= depth; ++len) {
            for (const auto& w : sym::enumerate_words(m, len)) words.push_back(w);
        }
        std::size_t hits = 0;
        for (std::size_t s = 0; s < words.size(); ++s) {
            for (std::size_t t = s + 1; t < words.size(); ++t) {
                const auto cs = compose(f, words[s]);
                const auto ct = compose(f, words[t]);
                if (std::abs(cs.first - ct.first) <= 1e-12 &&
                    std::abs(cs.second - ct.second) <= 1e-12) {
                    ++hits;
                }
            }
        }
        return hits;
    };
    CHECK(brute_force(fam, 3, 2) == pairs.size());

    auto cantor = cantor_thirds();
    CHECK(brute_force(cantor, 2, 3) == 0);
    CHECK(ifs::detect_exact_overlap(cantor, {}, 3).empty());

    auto mob = ifs::mobius_family({Mat2{3, 1, 1, 2}, Mat2{1, 1, 1, 2}});
    CHECK_THROWS_AS(ifs::detect_exact_overlap(mob, {}, 2), UnsupportedKind);
}

TEST_CASE("exact overlap: depth one with distinct maps is empty") {
    CHECK(ifs::detect_exact_overlap(cantor_thirds(), {}, 1).empty());
}

TEST_CASE("verify_assumptions on exact affine families") {
    auto fam = cantor_thirds();
    const auto rep = ifs::verify_assumptions(fam, 2, 16);
    CHECK(rep.gamma1_obs == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(rep.gamma2_obs == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(rep.M1 == 0.0);
    CHECK(rep.violations.empty());
}

TEST_CASE("verify_assumptions over the one-parameter interval family") {
    using ifs::LinForm;
    std::vector<ifs::MapSpec> maps;
    maps.push_back(ifs::MapSpec::affine(LinForm::with_param(0.0, 0), LinForm::with_param(-1.0, 0)));
    maps.push_back(ifs::MapSpec::affine(LinForm::with_param(0.0, 0),
                                        LinForm::with_param(1.0, 0, -1.0)));
    IFSFamily fam(std::move(maps), Interval{-1.0, 1.0}, {Interval{0.5, 0.66}}, 0.5, 0.66);
    const auto rep = ifs::verify_assumptions(fam, 5, 9);
    CHECK(rep.gamma2_obs <= 0.66 + 1e-12);
    CHECK(rep.gamma1_obs >= 0.5 - 1e-12);
    CHECK(rep.violations.empty());
    CHECK(rep.M_lam > 0.0);
}

TEST_CASE("verify_assumptions reports declared-bound violations") {
    // family declared with gamma2 = 0.5 but containing slope 0.7
    std::vector<ifs::MapSpec> maps;
    maps.push_back(ifs::MapSpec::affine(0.3, 0.0));
    maps.push_back(ifs::MapSpec::affine(0.7, 0.3));
    IFSFamily fam(std::move(maps), Interval{0.0, 1.0}, {}, 0.3, 0.5);
    const auto rep = ifs::verify_assumptions(fam, 2, 8);
    CHECK(!rep.violations.empty());
}

TEST_CASE("vertical translate construction") {
    auto fam = ifs::vertical_translate_family(cantor_thirds(), 0.05);
    CHECK(fam.param_dim() == 2);
    CHECK(fam.domain().lo == doctest::Approx(-0.1));
    CHECK(fam.domain().hi == doctest::Approx(1.1));
    // images remain inside the widened domain at the box corners
    for (double l1 : {-0.05, 0.05}) {
        for (double l2 : {-0.05, 0.05}) {
            const std::vector<double> lam = {l1, l2};
            const auto rep = ifs::verify_assumptions(fam, 2, 8);
            (void)rep;
            for (int a = 1; a <= 2; ++a) {
                const auto img = ifs::cylinder_interval(fam, lam, {a}).interval;
                CHECK(fam.domain().contains(img));
            }
        }
    }

    CHECK_THROWS_AS(
        ifs::vertical_translate_family(ifs::affine_family({0.6, 0.6}, {0.0, 0.4}, {0.0, 1.0}),
                                       0.05),
        ContractionTooWeak);

    auto three = ifs::vertical_translate_family(
        ifs::affine_family({0.25, 0.25, 0.25}, {0.0, 0.5, 0.75}, {0.0, 1.0}), 0.02);
    CHECK(three.param_dim() == 3);
}

TEST_CASE("mobius family admission") {
    // ||f'|| = |det A| / <A>^2: 3/9 and 1/4 here
    auto fam = ifs::mobius_family({Mat2{2, 1, 1, 2}, Mat2{1, 1, 1, 2}});
    CHECK(fam.gamma2() == doctest::Approx(1.0 / 3).epsilon(1e-12));

    // the identity is the classic non-contracting case
    CHECK_THROWS_AS(ifs::mobius_family({Mat2{1, 0, 0, 1}, Mat2{1, 1, 1, 2}}), NotContracting);
    CHECK_THROWS_AS(ifs::mobius_family({Mat2{1, 1, 1, 1}, Mat2{1, 1, 1, 2}}), SingularMatrix);
    // det 5 vs <A>^2 = 9: admitted
    auto ok = ifs::mobius_family({Mat2{3, 1, 1, 2}, Mat2{2, 1, 1, 2}});
    CHECK(ok.gamma2() == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
    // positive entries but |det| >= <A>^2
    CHECK_THROWS_AS(ifs::mobius_family({Mat2{10, 0.1, 0.1, 1}, Mat2{2, 1, 1, 2}}),
                    NotContracting);
}

TEST_CASE("norm of the projective derivative is det over squared column sum") {
    // |f'| at 0 and 1 equals det / colsum^2
    const Mat2 A{3, 1, 1, 2};
    auto fam = ifs::mobius_family({A, Mat2{2, 1, 1, 2}});
    const double at0 = std::abs(fam.map(1).dx(0.0, {}));
    const double at1 = std::abs(fam.map(1).dx(1.0, {}));
    CHECK(at0 == doctest::Approx(A.det() / ((A.b + A.d) * (A.b + A.d))));
    CHECK(at1 == doctest::Approx(A.det() / ((A.a + A.c) * (A.a + A.c))));
    CHECK(std::max(at0, at1) == doctest::Approx(5.0 / 9.0));
}

TEST_CASE("entry-parametrized projective family") {
    // one parameter per matrix entry; gradients checked against differences
    std::vector<Interval> box(8, Interval{-0.05, 0.05});
    auto fam = ifs::mobius_family({Mat2{3, 1, 1, 2}, Mat2{2, 1, 1, 2}}, box);
    CHECK(fam.param_dim() == 8);
    std::vector<double> lam = {0.01, -0.02, 0.0, 0.03, -0.01, 0.02, 0.0, -0.03};
    const double h = 1e-6;
    for (int a = 1; a <= 2; ++a) {
        for (int comp = 0; comp < 8; ++comp) {
            for (double x : {0.1, 0.5, 0.9}) {
                std::vector<double> up = lam, dn = lam;
                up[static_cast<std::size_t>(comp)] += h;
                dn[static_cast<std::size_t>(comp)] -= h;
                const double fd =
                    (fam.map(a).value(x, up) - fam.map(a).value(x, dn)) / (2 * h);
                CHECK(fam.map(a).dlam(x, lam, comp) == doctest::Approx(fd).epsilon(1e-6));
                const double fd_mixed =
                    (fam.map(a).dx(x, up) - fam.map(a).dx(x, dn)) / (2 * h);
                CHECK(fam.map(a).dlam_dx(x, lam, comp) ==
                      doctest::Approx(fd_mixed).epsilon(5e-5));
            }
        }
    }
}

TEST_CASE("projection reports when the maps leave the domain") {
    // translated projective maps pushed far outside the interval: the
    // bisection cannot bracket a fixed point
    auto mob = ifs::mobius_family({Mat2{3, 1, 1, 2}, Mat2{1, 1, 1, 2}});
    std::vector<ifs::MapSpec> maps;
    maps.push_back(ifs::MapSpec::translated(mob.map(1), 0));
    maps.push_back(ifs::MapSpec::translated(mob.map(2), 1));
    IFSFamily fam(std::move(maps), Interval{-0.2, 1.2}, {{-5.0, 5.0}, {-5.0, 5.0}},
                  mob.gamma1(), mob.gamma2());
    const std::vector<double> lam = {4.0, 4.0};
    CHECK_THROWS_AS(
        ifs::natural_projection(fam, lam, EventuallyPeriodicWord({1}, {1, 2}), 1e-12),
        NoConvergence);
}

TEST_CASE("orientation-reversing maps are handled throughout") {
    // first map has slope -1/3; images still nest and projections resolve
    auto fam = ifs::affine_family({-1.0 / 3, 1.0 / 3}, {1.0 / 3, 2.0 / 3}, {0.0, 1.0});
    const auto c1 = ifs::cylinder_interval(fam, {}, {1}).interval;
    CHECK(c1.lo == doctest::Approx(0.0));
    CHECK(c1.hi == doctest::Approx(1.0 / 3));

    SplitMix64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Word pre, per;
        for (std::uint64_t s = 0, k = rng.next() % 3; s < k; ++s) pre.push_back(1 + static_cast<int>(rng.next() % 2));
        for (std::uint64_t s = 0, k = 1 + rng.next() % 2; s < k; ++s) per.push_back(1 + static_cast<int>(rng.next() % 2));
        EventuallyPeriodicWord w(pre, per);
        const double p = ifs::natural_projection(fam, {}, w).value;
        for (std::size_t n = 0; n <= 5; ++n) {
            const auto cyl = ifs::cylinder_interval(fam, {}, sym::prefix(w, n)).interval;
            CHECK(p >= cyl.lo - 1e-10);
            CHECK(p <= cyl.hi + 1e-10);
        }
    }
    const auto fv = ifs::apply_word(fam, {}, {1, 2}, 0.5);
    CHECK(fv.deriv == doctest::Approx(-1.0 / 9).epsilon(1e-14));
}
