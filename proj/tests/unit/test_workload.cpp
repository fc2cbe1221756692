#include <doctest.h>

#include <cmath>
#include <set>

#include "felsim/error.hpp"
#include "felsim/workload/workload.hpp"
#include "support/oracles.hpp"

using namespace felsim;
using namespace felsim::workload;

TEST_CASE("one-item catalog always yields rank 1") {
    ZipfSampler z(1, 1.0);
    sim::RandomStream r(1, "z1");
    for (int i = 0; i < 100; ++i) CHECK(z.sample(r) == 1);
}

TEST_CASE("N=4, s=1 probabilities") {
    ZipfSampler z(4, 1.0);
    // H4 = 25/12.
    CHECK(z.probability(1) == doctest::Approx(12.0 / 25.0));
    CHECK(z.probability(2) == doctest::Approx(6.0 / 25.0));
    CHECK(z.probability(3) == doctest::Approx(4.0 / 25.0));
    CHECK(z.probability(4) == doctest::Approx(3.0 / 25.0));
    CHECK(12.0 / 25.0 == doctest::Approx(0.48));
}

TEST_CASE("N=4 empirical frequencies within 0.01") {
    ZipfSampler z(4, 1.0);
    sim::RandomStream r(5, "z4");
    std::vector<int> c(4, 0);
    const int n = 100'000;
    for (int i = 0; i < n; ++i) ++c[z.sample(r) - 1];
    const double expected[] = {0.48, 0.24, 0.16, 0.12};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(c[i] / double(n) - expected[i]) < 0.01);
}

TEST_CASE("chi-square goodness of fit") {
    for (const std::size_t n : {4u, 100u}) {
        const auto chi = testing::zipf_chi_square(n, 1.0, 100'000, 17);
        INFO("N=" << n << " statistic " << chi.statistic << " critical " << chi.critical);
        CHECK(chi.passes());
    }
}

TEST_CASE("invalid sampler parameters") {
    CHECK_THROWS_AS(ZipfSampler(0, 1.0), InvalidSpec);
    CHECK_THROWS_AS(ZipfSampler(4, 0.0), InvalidSpec);
}

TEST_CASE("periodic playlist cycles at the period") {
    const auto cat = ccn::build_catalog(ccn::CatalogSpec{2, 1});
    const auto x = ccn::ContentName::parse("/a/item-0001");
    const auto y = ccn::ContentName::parse("/a/item-0002");
    RequestGenerator g(RequesterProfile{NodeId(0), PeriodicModel{100, {x, y}}, ccn::ContentClass::TypeA}, cat);
    sim::RandomStream r(1, "p");
    auto a = g.next_request(SimTime{0}, r);
    auto b = g.next_request(a.fire_at, r);
    auto c = g.next_request(b.fire_at, r);
    CHECK(a.fire_at == SimTime{100});
    CHECK(a.name == x);
    CHECK(b.fire_at == SimTime{200});
    CHECK(b.name == y);
    CHECK(c.fire_at == SimTime{300});
    CHECK(c.name == x);
}

TEST_CASE("zipf gaps average the configured mean and stay in class") {
    const auto cat = ccn::build_catalog(ccn::CatalogSpec{20, 1});
    RequestGenerator g(RequesterProfile{NodeId(0), ZipfModel{1.0, 50.0}, ccn::ContentClass::TypeA}, cat);
    sim::RandomStream r(9, "gaps");
    SimTime t{0};
    const int n = 10'000;
    for (int i = 0; i < n; ++i) {
        const auto next = g.next_request(t, r);
        CHECK(cat.find(next.name)->cls == ccn::ContentClass::TypeA);
        t = next.fire_at;
    }
    CHECK(std::abs(t.ms() / double(n) - 50.0) < 2.5);
}

TEST_CASE("request sequence is a pure function of the seed") {
    const auto cat = ccn::build_catalog(ccn::CatalogSpec{20, 1});
    const RequesterProfile p{NodeId(0), ZipfModel{1.0, 50.0}, ccn::ContentClass::TypeB};
    RequestGenerator g1(p, cat), g2(p, cat);
    sim::RandomStream r1(4, "w"), r2(4, "w");
    for (int i = 0; i < 500; ++i) {
        const auto a = g1.next_request(SimTime{i}, r1);
        const auto b = g2.next_request(SimTime{i}, r2);
        CHECK(a.fire_at == b.fire_at);
        CHECK(a.name == b.name);
    }
}

TEST_CASE("profile validation") {
    const auto cat = ccn::build_catalog(ccn::CatalogSpec{2, 1});
    const auto b1 = ccn::ContentName::parse("/b/item-0001");
    CHECK_THROWS_AS(validate(RequesterProfile{NodeId(0), PeriodicModel{100, {b1}}, ccn::ContentClass::TypeA}, cat),
                    InvalidSpec);
    CHECK_THROWS_AS(validate(RequesterProfile{NodeId(0), PeriodicModel{0, {b1}}, ccn::ContentClass::TypeB}, cat),
                    InvalidSpec);
    CHECK_NOTHROW(validate(RequesterProfile{NodeId(0), ZipfModel{}, ccn::ContentClass::TypeB}, cat));
}
