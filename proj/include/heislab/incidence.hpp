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

#pragma once

/**
 * @file incidence.hpp
 * @brief Point-line incidences in F_p^2, point-plane incidences in F_p^3, and bound checkers.
 */

#include "heislab/field.hpp"
#include "heislab/rational.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace heislab {

/// Incidence counting works on dense point tables; p is capped accordingly.
inline constexpr std::uint32_t kMaxIncidencePrime = 1009;

struct Point2 {
    Residue x = 0;
    Residue y = 0;
    friend auto operator<=>(const Point2&, const Point2&) = default;
};

/// y = slope x + intercept, or x = intercept when vertical.
struct Line {
    bool vertical = false;
    Residue slope = 0;
    Residue intercept = 0;

    static Line graph(Residue slope, Residue intercept) { return {false, slope, intercept}; }
    static Line vertical_at(Residue c) { return {true, 0, c}; }
    /// slope * p + intercept, or p^2 + c for vertical lines.
    std::uint64_t index(std::uint32_t p) const noexcept;
    friend auto operator<=>(const Line&, const Line&) = default;
};

bool incident(std::uint32_t p, const Point2& r, const Line& l) noexcept;

class LineSet {
public:
    /// Duplicates merged; coordinates are range-checked against p.
    LineSet(std::uint32_t p, std::vector<Line> lines);
    /// All p^2 + p lines.
    static LineSet all(std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }
    std::size_t size() const noexcept { return lines_.size(); }
    std::span<const Line> lines() const noexcept { return lines_; }

private:
    std::uint32_t p_;
    std::vector<Line> lines_;
};

/// Points are validated and deduplicated.
std::vector<Point2> make_points(std::uint32_t p, std::vector<Point2> points);
std::vector<Point2> grid(std::uint32_t p, std::span<const Residue> a, std::span<const Residue> b);

/// I(P, L), by evaluating each line over F_p against a point table.
std::uint64_t count_incidences(std::span<const Point2> points, const LineSet& lines);

struct TrivialBoundCheck {
    std::uint64_t count = 0;
    double bound = 0;  // min(|P|^{1/2}|L| + |P|, |L|^{1/2}|P| + |L|)
    bool pass = false;  // decided in integers
};

TrivialBoundCheck trivial_bound_check(std::span<const Point2> points, const LineSet& lines);

struct WeightedPoint {
    Point2 point;
    Rational weight;
};

struct WeightedLine {
    Line line;
    Rational weight;
};

struct VinhCheck {
    double lhs = 0;  // |sum_{r in l} f(r) g(l)|
    double rhs = 0;  // sqrt(p) ||f||_2 ||g||_2
    bool pass = false;  // lhs^2 <= p ||f||^2 ||g||^2, decided exactly
};

/// Throws std::invalid_argument unless sum f = 0 or sum g = 0.
VinhCheck vinh_form_check(std::uint32_t p, std::span<const WeightedPoint> f, std::span<const WeightedLine> g);

struct IncidenceReport {
    std::uint32_t p = 0;
    std::uint64_t points = 0;
    std::uint64_t objects = 0;  // lines or planes
    std::uint64_t incidences = 0;
    double main_term = 0;
    double error = 0;
    bool error_is_zero = false;  // I * p == |P| |objects| exactly
    double bound = 0;
    double ratio = 0;
    std::uint64_t max_collinear = 0;  // point-plane reports only
};

/// Points A x B against L; error term |A|^{3/4}|B|^{1/2}|L|^{3/4} + |L| + |A||B|.
IncidenceReport sdz_report(std::uint32_t p, std::span<const Residue> a, std::span<const Residue> b, const LineSet& lines);

struct Point3 {
    Residue x = 0, y = 0, z = 0;
    friend auto operator<=>(const Point3&, const Point3&) = default;
};

/// a x + b y + c z = d with the first nonzero of (a, b, c) equal to 1.
struct Plane {
    Residue a = 0, b = 0, c = 0, d = 0;
    friend auto operator<=>(const Plane&, const Plane&) = default;
};

/// Normalizes; throws std::invalid_argument when a = b = c = 0.
Plane make_plane(std::uint32_t p, Residue a, Residue b, Residue c, Residue d);

class PlaneSet {
public:
    PlaneSet(std::uint32_t p, std::vector<Plane> planes);
    /// All p (p^2 + p + 1) planes.
    static PlaneSet all(std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }
    std::size_t size() const noexcept { return planes_.size(); }
    std::span<const Plane> planes() const noexcept { return planes_; }

private:
    std::uint32_t p_;
    std::vector<Plane> planes_;
};

std::vector<Point3> make_points(std::uint32_t p, std::vector<Point3> points);
std::uint64_t count_incidences(std::span<const Point3> points, const PlaneSet& planes);
/// Largest number of collinear points, by grouping directions around each point.
std::uint64_t max_collinear(std::uint32_t p, std::span<const Point3> points);

/// Requires |P| <= |Pi|; error term |P|^{1/2}|Pi| + k|Pi|.
IncidenceReport point_plane_report(std::span<const Point3> points, const PlaneSet& planes);

}  // namespace heislab
