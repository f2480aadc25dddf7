/*
   Copyright 2026 The heislab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "heislab/incidence.hpp"
#include "heislab/random.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace heislab;

namespace {

std::vector<Point2> random_points(Rng& rng, std::uint32_t p) {
    std::vector<Point2> pts;
    const std::uint64_t pp = std::uint64_t{p} * p;
    for (auto c : reservoir_sample(rng, pp, rng.between(0, static_cast<std::int64_t>(pp))))
        pts.push_back({static_cast<Residue>(c / p), static_cast<Residue>(c % p)});
    return pts;
}

LineSet random_lines(Rng& rng, std::uint32_t p) {
    const std::uint64_t pp = std::uint64_t{p} * p;
    std::vector<Line> ls;
    for (auto c : reservoir_sample(rng, pp + p, rng.between(1, static_cast<std::int64_t>(pp + p))))
        ls.push_back(c < pp ? Line::graph(c / p, c % p) : Line::vertical_at(c - pp));
    return LineSet(p, ls);
}

std::uint64_t oracle_incidences(std::uint32_t p, const std::vector<Point2>& pts, const LineSet& lines) {
    std::uint64_t count = 0;
    for (const auto& l : lines.lines())
        for (const auto& r : pts) {
            const bool on = l.vertical ? r.x == l.intercept : (std::uint64_t{l.slope} * r.x + l.intercept) % p == r.y;
            count += on;
        }
    return count;
}

std::uint64_t oracle_plane_incidences(std::uint32_t p, const std::vector<Point3>& pts, const PlaneSet& planes) {
    std::uint64_t count = 0;
    for (const auto& h : planes.planes())
        for (const auto& r : pts) count += (std::uint64_t{h.a} * r.x + std::uint64_t{h.b} * r.y + std::uint64_t{h.c} * r.z) % p == h.d;
    return count;
}

}  // namespace

TEST_CASE("incidence counts") {
    CHECK(count_incidences(std::vector<Point2>{}, LineSet::all(5)) == 0);
    std::vector<Residue> all5 = {0, 1, 2, 3, 4};
    CHECK(LineSet::all(5).size() == 30);
    CHECK(count_incidences(grid(5, all5, all5), LineSet::all(5)) == 150);
    CHECK(count_incidences(std::vector<Point2>{{0, 0}}, LineSet::all(7)) == 8);
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        const std::uint32_t p = t % 2 ? 5 : 7;
        const auto pts = random_points(rng, p);
        const auto lines = random_lines(rng, p);
        CHECK(count_incidences(pts, lines) == oracle_incidences(p, pts, lines));
    }
}

TEST_CASE("trivial bound") {
    std::vector<Residue> all5 = {0, 1, 2, 3, 4};
    const auto full = trivial_bound_check(grid(5, all5, all5), LineSet::all(5));
    CHECK(full.count == 150);
    CHECK(full.bound == doctest::Approx(std::sqrt(30.0) * 25 + 30));
    CHECK(full.pass);
    const auto one = trivial_bound_check(std::vector<Point2>{{2, 3}}, LineSet::all(5));
    CHECK(one.count == 6);
    CHECK(one.pass);
    Rng rng(32);
    for (int t = 0; t < 1000; ++t) CHECK(trivial_bound_check(random_points(rng, 11), random_lines(rng, 11)).pass);
}

TEST_CASE("vinh bound") {
    const LineSet lines = LineSet::all(5);
    std::vector<WeightedLine> ones;
    for (const auto& l : lines.lines()) ones.push_back({l, Rational(1)});
    const std::vector<WeightedPoint> dipole = {{{0, 0}, Rational(1)}, {{1, 1}, Rational(-1)}};
    const auto v = vinh_form_check(5, dipole, ones);
    CHECK(v.lhs == 0.0);
    CHECK(v.pass);
    const std::vector<WeightedPoint> positive = {{{0, 0}, Rational(1)}};
    const std::vector<WeightedLine> positive_l = {{Line::graph(0, 0), Rational(1)}};
    CHECK_THROWS_AS(vinh_form_check(5, positive, positive_l), std::invalid_argument);

    Rng rng(33);
    for (int t = 0; t < 200; ++t) {
        const std::uint32_t p = 7;
        // mean-zero +-1 weights on all of F_7^2 (one point takes the balancing weight)
        std::vector<WeightedPoint> f;
        std::int64_t total = 0;
        for (Residue x = 0; x < p; ++x)
            for (Residue y = 0; y < p; ++y) {
                if (x == p - 1 && y == p - 1) break;
                const std::int64_t w = rng.below(2) ? 1 : -1;
                total += w;
                f.push_back({{x, y}, Rational(w)});
            }
        f.push_back({{p - 1, p - 1}, Rational(-total)});
        std::vector<WeightedLine> g;
        const LineSet ten = [&] {
            std::vector<Line> ls;
            for (auto c : reservoir_sample(rng, 56, 10)) ls.push_back(c < 49 ? Line::graph(c / 7, c % 7) : Line::vertical_at(c - 49));
            return LineSet(p, ls);
        }();
        for (const auto& l : ten.lines()) g.push_back({l, Rational(1)});
        CHECK(vinh_form_check(p, f, g).pass);
    }
    // indicator(A x B) minus its mean
    const std::vector<Residue> a = {0, 2, 3}, b = {1, 4};
    std::vector<WeightedPoint> f;
    for (Residue x = 0; x < 7; ++x)
        for (Residue y = 0; y < 7; ++y) {
            const bool in = (x == 0 || x == 2 || x == 3) && (y == 1 || y == 4);
            f.push_back({{x, y}, Rational(in ? 49 - 6 : -6, 49)});
        }
    std::vector<WeightedLine> g;
    const LineSet all7 = LineSet::all(7);
    for (const auto& l : all7.lines()) g.push_back({l, Rational(rng.between(-2, 2))});
    CHECK(vinh_form_check(7, f, g).pass);
}

TEST_CASE("sdz reports") {
    for (std::uint32_t p : {5u, 7u, 11u}) {
        std::vector<Residue> all;
        for (Residue i = 0; i < p; ++i) all.push_back(i);
        const auto r = sdz_report(p, all, all, LineSet::all(p));
        CHECK(r.incidences == std::uint64_t{p} * (p * p + p));
        CHECK(r.main_term == doctest::Approx(p * (p * p + p)));
        CHECK(r.error_is_zero);
        CHECK(r.ratio == 0.0);
    }
    const std::vector<Residue> zero = {0};
    const auto z = sdz_report(11, zero, zero, LineSet::all(11));
    CHECK(z.incidences <= z.objects);
    CHECK(std::isfinite(z.ratio));
    Rng rng(34);
    std::vector<Line> ls;
    for (auto c : reservoir_sample(rng, 121, 40)) ls.push_back(Line::graph(c / 11, c % 11));
    const auto s = sdz_report(11, sample_residues(rng, 11, 4), sample_residues(rng, 11, 6), LineSet(11, ls));
    CHECK(s.objects == 40);
    CHECK(std::isfinite(s.ratio));
    CHECK(s.ratio >= 0.0);
}

TEST_CASE("planes and point-plane incidences") {
    CHECK(PlaneSet::all(3).size() == 3 * (9 + 3 + 1));
    CHECK(make_plane(5, 2, 4, 0, 1) == Plane{1, 2, 0, 3});
    CHECK_THROWS_AS(make_plane(5, 0, 0, 0, 1), std::invalid_argument);
    const auto empty = point_plane_report(std::vector<Point3>{}, PlaneSet::all(3));
    CHECK(empty.incidences == 0);
    std::vector<Point3> cube;
    for (Residue x = 0; x < 3; ++x)
        for (Residue y = 0; y < 3; ++y)
            for (Residue z = 0; z < 3; ++z) cube.push_back({x, y, z});
    const auto full = point_plane_report(cube, PlaneSet::all(3));
    CHECK(full.incidences == oracle_plane_incidences(3, cube, PlaneSet::all(3)));
    CHECK(full.main_term == doctest::Approx(27.0 * 39 / 3));
    CHECK(full.max_collinear == 3);
    Rng rng(35);
    for (int t = 0; t < 20; ++t) {
        const auto all = PlaneSet::all(5);
        std::vector<Plane> planes;
        for (auto i : reservoir_sample(rng, all.size(), 60)) planes.push_back(all.planes()[i]);
        std::vector<Point3> pts;
        for (auto c : reservoir_sample(rng, 125, rng.between(1, 60))) pts.push_back({static_cast<Residue>(c / 25), static_cast<Residue>(c / 5 % 5), static_cast<Residue>(c % 5)});
        const PlaneSet ps(5, planes);
        const auto r = point_plane_report(pts, ps);
        CHECK(r.incidences == oracle_plane_incidences(5, pts, ps));
        CHECK(std::isfinite(r.ratio));
    }
    CHECK_THROWS_AS(point_plane_report(cube, PlaneSet(3, {Plane{1, 0, 0, 0}})), std::invalid_argument);
}

TEST_CASE("collinearity") {
    const std::vector<Point3> line = {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {0, 1, 2}};
    CHECK(max_collinear(5, line) == 3);
    CHECK(max_collinear(5, std::vector<Point3>{{1, 2, 3}}) == 1);
}

TEST_CASE("input validation") {
    CHECK_THROWS(make_points(5, std::vector<Point2>{{5, 0}}));
    CHECK(make_points(5, std::vector<Point2>{{1, 1}, {1, 1}}).size() == 1);
    CHECK_THROWS(LineSet(5, {Line::graph(5, 0)}));
    CHECK(LineSet(5, {Line::graph(1, 0), Line::graph(1, 0)}).size() == 1);
}
