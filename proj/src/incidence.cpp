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

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace heislab {

namespace {

using boost::multiprecision::cpp_int;

void require_incidence_prime(std::uint32_t p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("modulus must be an odd prime");
    if (p > kMaxIncidencePrime) throw std::invalid_argument("incidence counting is limited to p <= 1009");
}

void require_residue(std::uint32_t p, Residue v) {
    if (v >= p) throw std::out_of_range("coordinate " + std::to_string(v) + " outside F_" + std::to_string(p));
}

template <class T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<bool> point_table(std::uint32_t p, std::span<const Point2> points) {
    std::vector<bool> t(static_cast<std::size_t>(p) * p, false);
    for (const auto& r : points) {
        require_residue(p, r.x);
        require_residue(p, r.y);
        t[static_cast<std::size_t>(r.x) * p + r.y] = true;
    }
    return t;
}

double to_double(const cpp_int& v) { return v.convert_to<double>(); }

/// Exact test of v <= sqrt(s) * t + u for nonnegative integers.
bool le_sqrt_form(const cpp_int& v, const cpp_int& s, const cpp_int& t, const cpp_int& u) {
    if (v <= u) return true;
    const cpp_int gap = v - u;
    return gap * gap <= s * t * t;
}

}  // namespace

std::uint64_t Line::index(std::uint32_t p) const noexcept {
    const std::uint64_t q = p;
    return vertical ? q * q + intercept : static_cast<std::uint64_t>(slope) * q + intercept;
}

bool incident(std::uint32_t p, const Point2& r, const Line& l) noexcept {
    if (l.vertical) return r.x == l.intercept;
    return r.y == (static_cast<std::uint64_t>(l.slope) * r.x + l.intercept) % p;
}

LineSet::LineSet(std::uint32_t p, std::vector<Line> lines) : p_(p), lines_(std::move(lines)) {
    require_incidence_prime(p);
    for (auto& l : lines_) {
        require_residue(p, l.intercept);
        if (l.vertical)
            l.slope = 0;
        else
            require_residue(p, l.slope);
    }
    sort_unique(lines_);
}

LineSet LineSet::all(std::uint32_t p) {
    std::vector<Line> lines;
    lines.reserve(static_cast<std::size_t>(p) * p + p);
    for (Residue m = 0; m < p; ++m)
        for (Residue c = 0; c < p; ++c) lines.push_back(Line::graph(m, c));
    for (Residue c = 0; c < p; ++c) lines.push_back(Line::vertical_at(c));
    return LineSet(p, std::move(lines));
}

std::vector<Point2> make_points(std::uint32_t p, std::vector<Point2> points) {
    for (const auto& r : points) {
        require_residue(p, r.x);
        require_residue(p, r.y);
    }
    sort_unique(points);
    return points;
}

std::vector<Point2> grid(std::uint32_t p, std::span<const Residue> a, std::span<const Residue> b) {
    std::vector<Point2> pts;
    for (Residue x : a)
        for (Residue y : b) pts.push_back({x, y});
    return make_points(p, std::move(pts));
}

std::uint64_t count_incidences(std::span<const Point2> points, const LineSet& lines) {
    const std::uint32_t p = lines.p();
    if (points.empty()) return 0;
    const auto table = point_table(p, points);
    std::uint64_t count = 0;
    for (const Line& l : lines.lines()) {
        if (l.vertical) {
            for (Residue y = 0; y < p; ++y) count += table[static_cast<std::size_t>(l.intercept) * p + y];
            continue;
        }
        Residue y = l.intercept;
        for (Residue x = 0; x < p; ++x) {
            count += table[static_cast<std::size_t>(x) * p + y];
            y += l.slope;
            if (y >= p) y -= p;
        }
    }
    return count;
}

TrivialBoundCheck trivial_bound_check(std::span<const Point2> points, const LineSet& lines) {
    TrivialBoundCheck r;
    r.count = count_incidences(points, lines);
    const cpp_int i = r.count, np = points.size(), nl = lines.size();
    r.pass = le_sqrt_form(i, np, nl, np) && le_sqrt_form(i, nl, np, nl);
    const double dp = static_cast<double>(points.size()), dl = static_cast<double>(lines.size());
    r.bound = std::min(std::sqrt(dp) * dl + dp, std::sqrt(dl) * dp + dl);
    return r;
}

VinhCheck vinh_form_check(std::uint32_t p, std::span<const WeightedPoint> f, std::span<const WeightedLine> g) {
    require_incidence_prime(p);
    auto common_den = [](auto items) {
        cpp_int d = 1;
        for (const auto& it : items) d = boost::multiprecision::lcm(d, cpp_int(it.weight.den()));
        return d;
    };
    const cpp_int df = common_den(f), dg = common_den(g);

    std::map<Point2, cpp_int> fw;
    for (const auto& [r, w] : f) {
        require_residue(p, r.x);
        require_residue(p, r.y);
        fw[r] += cpp_int(w.num()) * (df / w.den());
    }
    std::map<Line, cpp_int> gw;
    for (const auto& [l, w] : g) {
        const LineSet check(p, {l});
        gw[check.lines()[0]] += cpp_int(w.num()) * (dg / w.den());
    }

    cpp_int sf = 0, sg = 0, nf = 0, ng = 0;
    for (const auto& [r, v] : fw) {
        sf += v;
        nf += v * v;
    }
    for (const auto& [l, v] : gw) {
        sg += v;
        ng += v * v;
    }
    if (sf != 0 && sg != 0) throw std::invalid_argument("Vinh's bound needs a mean-zero weight family");

    cpp_int form = 0;
    for (const auto& [l, v] : gw) {
        if (v == 0) continue;
        for (const auto& [r, u] : fw)
            if (u != 0 && incident(p, r, l)) form += u * v;
    }
    const cpp_int lhs = form < 0 ? cpp_int(-form) : form;

    VinhCheck out;
    out.pass = lhs * lhs <= cpp_int(p) * nf * ng;
    const double scale = to_double(df) * to_double(dg);
    out.lhs = to_double(lhs) / scale;
    out.rhs = std::sqrt(static_cast<double>(p) * to_double(nf) * to_double(ng)) / scale;
    return out;
}

IncidenceReport sdz_report(std::uint32_t p, std::span<const Residue> a, std::span<const Residue> b, const LineSet& lines) {
    if (lines.p() != p) throw std::invalid_argument("line set over a different field");
    const auto pts = grid(p, a, b);
    std::vector<Residue> ua(a.begin(), a.end()), ub(b.begin(), b.end());
    sort_unique(ua);
    sort_unique(ub);
    IncidenceReport r;
    r.p = p;
    r.points = pts.size();
    r.objects = lines.size();
    r.incidences = count_incidences(pts, lines);
    const cpp_int err_times_p = cpp_int(r.incidences) * p - cpp_int(r.points) * r.objects;
    r.error_is_zero = err_times_p == 0;
    r.main_term = static_cast<double>(r.points) * static_cast<double>(r.objects) / p;
    r.error = to_double(err_times_p) / p;
    const double na = static_cast<double>(ua.size()), nb = static_cast<double>(ub.size()), nl = static_cast<double>(r.objects);
    r.bound = std::pow(na, 0.75) * std::sqrt(nb) * std::pow(nl, 0.75) + nl + na * nb;
    r.ratio = r.error_is_zero || r.bound == 0 ? 0.0 : std::abs(r.error) / r.bound;
    return r;
}

Plane make_plane(std::uint32_t p, Residue a, Residue b, Residue c, Residue d) {
    const PrimeField f(p);
    for (Residue v : {a, b, c, d}) require_residue(p, v);
    const Residue lead = a ? a : (b ? b : c);
    if (lead == 0) throw std::invalid_argument("plane needs a nonzero normal vector");
    const Residue s = f.inv(lead);
    return {f.mul(a, s), f.mul(b, s), f.mul(c, s), f.mul(d, s)};
}

PlaneSet::PlaneSet(std::uint32_t p, std::vector<Plane> planes) : p_(p), planes_(std::move(planes)) {
    require_incidence_prime(p);
    for (auto& pl : planes_) pl = make_plane(p, pl.a, pl.b, pl.c, pl.d);
    sort_unique(planes_);
}

PlaneSet PlaneSet::all(std::uint32_t p) {
    std::vector<Plane> planes;
    for (Residue b = 0; b < p; ++b)
        for (Residue c = 0; c < p; ++c)
            for (Residue d = 0; d < p; ++d) planes.push_back({1, b, c, d});
    for (Residue c = 0; c < p; ++c)
        for (Residue d = 0; d < p; ++d) planes.push_back({0, 1, c, d});
    for (Residue d = 0; d < p; ++d) planes.push_back({0, 0, 1, d});
    return PlaneSet(p, std::move(planes));
}

std::vector<Point3> make_points(std::uint32_t p, std::vector<Point3> points) {
    for (const auto& r : points) {
        require_residue(p, r.x);
        require_residue(p, r.y);
        require_residue(p, r.z);
    }
    sort_unique(points);
    return points;
}

std::uint64_t count_incidences(std::span<const Point3> points, const PlaneSet& planes) {
    const std::uint32_t p = planes.p();
    const PrimeField f(p);
    const auto pts = make_points(p, std::vector<Point3>(points.begin(), points.end()));
    std::uint64_t count = 0;
    for (const Plane& pl : planes.planes())
        for (const Point3& r : pts) {
            const Residue lhs = f.add(f.add(f.mul(pl.a, r.x), f.mul(pl.b, r.y)), f.mul(pl.c, r.z));
            count += lhs == pl.d;
        }
    return count;
}

std::uint64_t max_collinear(std::uint32_t p, std::span<const Point3> points) {
    const PrimeField f(p);
    const auto pts = make_points(p, std::vector<Point3>(points.begin(), points.end()));
    if (pts.size() <= 2) return pts.size();
    std::uint64_t best = 2;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::map<Point3, std::uint64_t> directions;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            Point3 d{f.sub(pts[j].x, pts[i].x), f.sub(pts[j].y, pts[i].y), f.sub(pts[j].z, pts[i].z)};
            const Residue lead = d.x ? d.x : (d.y ? d.y : d.z);
            const Residue s = f.inv(lead);
            d = {f.mul(d.x, s), f.mul(d.y, s), f.mul(d.z, s)};
            best = std::max(best, ++directions[d] + 1);
        }
    }
    return best;
}

IncidenceReport point_plane_report(std::span<const Point3> points, const PlaneSet& planes) {
    const std::uint32_t p = planes.p();
    const auto pts = make_points(p, std::vector<Point3>(points.begin(), points.end()));
    if (pts.size() > planes.size()) throw std::invalid_argument("point-plane bound needs |P| <= |Pi|");
    IncidenceReport r;
    r.p = p;
    r.points = pts.size();
    r.objects = planes.size();
    r.incidences = count_incidences(pts, planes);
    r.max_collinear = max_collinear(p, pts);
    const cpp_int err_times_p = cpp_int(r.incidences) * p - cpp_int(r.points) * r.objects;
    r.error_is_zero = err_times_p == 0;
    r.main_term = static_cast<double>(r.points) * static_cast<double>(r.objects) / p;
    r.error = to_double(err_times_p) / p;
    const double np = static_cast<double>(r.points), npl = static_cast<double>(r.objects);
    r.bound = std::sqrt(np) * npl + static_cast<double>(r.max_collinear) * npl;
    r.ratio = r.error_is_zero || r.bound == 0 ? 0.0 : std::abs(r.error) / r.bound;
    return r;
}

}  // namespace heislab
