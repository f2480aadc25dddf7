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

#include "heislab/heislab.h"

#include "heislab/energy.hpp"
#include "heislab/freiman.hpp"
#include "heislab/group_set.hpp"
#include "heislab/incidence.hpp"
#include "heislab/rep_fourier.hpp"
#include "heislab/scenarios.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

struct hl_group {
    heislab::Group group;
};
struct hl_set {
    heislab::GroupSet set;
};
struct hl_report {
    heislab::ScenarioReport report;
};

namespace {

thread_local std::string last_error;

template <class Fn>
hl_status guarded(Fn&& fn) {
    last_error.clear();
    try {
        fn();
        return HL_OK;
    } catch (const heislab::ConfigError& e) {
        last_error = e.what();
        return HL_ERR_CONFIG;
    } catch (const std::out_of_range& e) {
        last_error = e.what();
        return HL_ERR_OUT_OF_RANGE;
    } catch (const std::invalid_argument& e) {
        last_error = e.what();
        return HL_ERR_INVALID_ARGUMENT;
    } catch (const std::domain_error& e) {
        last_error = e.what();
        return HL_ERR_DOMAIN;
    } catch (const std::overflow_error& e) {
        last_error = e.what();
        return HL_ERR_OVERFLOW;
    } catch (const std::exception& e) {
        last_error = e.what();
        return HL_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return HL_ERR_INTERNAL;
    }
}

template <class T>
void require(const T* p, const char* what) {
    if (!p) throw std::invalid_argument(std::string(what) + " is null");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

heislab::ElementCode code(const hl_group* g, std::uint64_t c) {
    g->group.check(heislab::ElementCode{c});
    return {c};
}

hl_status set_result(heislab::GroupSet s, hl_set** out) {
    *out = new hl_set{std::move(s)};
    return HL_OK;
}

}  // namespace

extern "C" {

const char* hl_version(void) { return "0.1.0"; }

const char* hl_last_error(void) { return last_error.c_str(); }

const char* hl_status_name(hl_status status) {
    switch (status) {
    case HL_OK: return "ok";
    case HL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case HL_ERR_CONFIG: return "config";
    case HL_ERR_OUT_OF_RANGE: return "out_of_range";
    case HL_ERR_DOMAIN: return "domain";
    case HL_ERR_OVERFLOW: return "overflow";
    case HL_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void hl_string_free(char* s) { std::free(s); }

hl_status hl_group_create(const char* tag, uint32_t p, unsigned n, hl_group** out) {
    return guarded([&] {
        require(tag, "tag");
        require(out, "out");
        *out = new hl_group{heislab::group_from_descriptor(tag, p, n)};
    });
}

void hl_group_free(hl_group* g) { delete g; }

hl_status hl_group_order(const hl_group* g, uint64_t* out) {
    return guarded([&] {
        require(g, "group");
        require(out, "out");
        *out = g->group.order();
    });
}

hl_status hl_group_mul(const hl_group* g, uint64_t a, uint64_t b, uint64_t* out) {
    return guarded([&] {
        require(g, "group");
        require(out, "out");
        *out = g->group.mul(code(g, a), code(g, b)).index;
    });
}

hl_status hl_group_inverse(const hl_group* g, uint64_t a, uint64_t* out) {
    return guarded([&] {
        require(g, "group");
        require(out, "out");
        *out = g->group.inverse(code(g, a)).index;
    });
}

hl_status hl_group_commutator(const hl_group* g, uint64_t a, uint64_t b, uint64_t* out) {
    return guarded([&] {
        require(g, "group");
        require(out, "out");
        *out = g->group.commutator(code(g, a), code(g, b)).index;
    });
}

hl_status hl_conjugacy_class_count(const hl_group* g, uint64_t* out) {
    return guarded([&] {
        require(g, "group");
        require(out, "out");
        *out = heislab::conjugacy_class_count(g->group);
    });
}

hl_status hl_set_create(const hl_group* g, const uint64_t* codes, size_t count, hl_set** out) {
    return guarded([&] {
        require(g, "group");
        require(out, "out");
        if (count && !codes) throw std::invalid_argument("codes is null");
        std::vector<heislab::ElementCode> v;
        v.reserve(count);
        for (size_t i = 0; i < count; ++i) v.push_back({codes[i]});
        set_result(heislab::GroupSet::from_codes(g->group, v), out);
    });
}

hl_status hl_set_from_json(const char* json, hl_set** out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        set_result(heislab::set_from_json(json), out);
    });
}

hl_status hl_set_to_json(const hl_set* s, char** out) {
    return guarded([&] {
        require(s, "set");
        require(out, "out");
        *out = dup(heislab::set_to_json(s->set));
    });
}

void hl_set_free(hl_set* s) { delete s; }

hl_status hl_set_size(const hl_set* s, uint64_t* out) {
    return guarded([&] {
        require(s, "set");
        require(out, "out");
        *out = s->set.size();
    });
}

hl_status hl_set_codes(const hl_set* s, uint64_t* buffer, size_t capacity, size_t* written) {
    return guarded([&] {
        require(s, "set");
        require(written, "written");
        if (capacity && !buffer) throw std::invalid_argument("buffer is null");
        const auto codes = s->set.codes();
        for (size_t i = 0; i < codes.size() && i < capacity; ++i) buffer[i] = codes[i].index;
        *written = codes.size();
    });
}

hl_status hl_set_product(const hl_set* a, const hl_set* b, hl_set** out) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        set_result(heislab::product_set(a->set, b->set), out);
    });
}

hl_status hl_set_commutator(const hl_set* a, const hl_set* b, hl_set** out) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        set_result(heislab::commutator_set(a->set, b->set), out);
    });
}

hl_status hl_set_signed_product(const hl_set* a, const int* signs, size_t length, hl_set** out) {
    return guarded([&] {
        require(a, "a");
        require(signs, "signs");
        require(out, "out");
        set_result(heislab::signed_product(a->set, std::span<const int>(signs, length)), out);
    });
}

hl_status hl_center_coverage(const hl_set* s, uint64_t* count, int* full) {
    return guarded([&] {
        require(s, "set");
        require(count, "count");
        require(full, "full");
        const auto c = heislab::center_coverage(s->set);
        *count = c.count;
        *full = c.full ? 1 : 0;
    });
}

hl_status hl_field_energy(uint32_t p, const uint32_t* elements, size_t count, int multiplicative, uint64_t* out) {
    return guarded([&] {
        require(out, "out");
        if (count && !elements) throw std::invalid_argument("elements is null");
        const heislab::FieldSet a(p, std::vector<heislab::Residue>(elements, elements + count));
        *out = heislab::energy(a, a, multiplicative ? heislab::EnergyLaw::mul : heislab::EnergyLaw::add);
    });
}

hl_status hl_group_energy(const hl_set* a, const hl_set* b, uint64_t* out) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        *out = heislab::group_energy(a->set, b->set);
    });
}

hl_status hl_group_energy_fourier(const hl_set* a, uint64_t* out) {
    return guarded([&] {
        require(a, "a");
        require(out, "out");
        *out = heislab::group_energy_via_fourier(a->set);
    });
}

hl_status hl_parseval_residual(const hl_set* a, int64_t* out) {
    return guarded([&] {
        require(a, "a");
        require(out, "out");
        *out = heislab::parseval_residual(heislab::GroupFunction::indicator(a->set));
    });
}

hl_status hl_count_incidences(uint32_t p, const uint32_t* points, size_t point_count, const uint32_t* lines,
                              size_t line_count, uint64_t* out) {
    return guarded([&] {
        require(out, "out");
        if ((point_count && !points) || (line_count && !lines)) throw std::invalid_argument("null input array");
        if (p > heislab::kMaxIncidencePrime) throw std::out_of_range("p exceeds the incidence limit");
        std::vector<heislab::Point2> pts;
        for (size_t i = 0; i < point_count; ++i) pts.push_back({points[2 * i], points[2 * i + 1]});
        std::vector<heislab::Line> ls;
        for (size_t i = 0; i < line_count; ++i) {
            const uint32_t* l = lines + 3 * i;
            ls.push_back(l[0] ? heislab::Line::vertical_at(l[2]) : heislab::Line::graph(l[1], l[2]));
        }
        *out = heislab::count_incidences(heislab::make_points(p, std::move(pts)), heislab::LineSet(p, std::move(ls)));
    });
}

hl_status hl_freiman_hom(const char* map_json, unsigned s, unsigned workers, int* is_hom, char** witness) {
    return guarded([&] {
        require(map_json, "map_json");
        require(is_hom, "is_hom");
        const auto verdict = heislab::is_freiman_hom(heislab::partial_map_from_json(map_json), s, workers);
        *is_hom = verdict.ok ? 1 : 0;
        if (witness) *witness = verdict.witness ? dup(heislab::witness_to_json(*verdict.witness)) : nullptr;
    });
}

hl_status hl_freiman_iso(const char* map_json, unsigned s, unsigned workers, int* is_iso) {
    return guarded([&] {
        require(map_json, "map_json");
        require(is_iso, "is_iso");
        *is_iso = heislab::is_freiman_iso(heislab::partial_map_from_json(map_json), s, workers) ? 1 : 0;
    });
}

hl_status hl_run_scenario(const char* config_json, hl_report** out) {
    return guarded([&] {
        require(config_json, "config_json");
        require(out, "out");
        *out = new hl_report{heislab::run_scenario(heislab::config_from_json(config_json))};
    });
}

void hl_report_free(hl_report* r) { delete r; }

hl_status hl_report_csv(const hl_report* r, char** out) {
    return guarded([&] {
        require(r, "report");
        require(out, "out");
        *out = dup(r->report.csv());
    });
}

hl_status hl_report_jsonl(const hl_report* r, char** out) {
    return guarded([&] {
        require(r, "report");
        require(out, "out");
        *out = dup(r->report.jsonl());
    });
}

hl_status hl_report_summary(const hl_report* r, char** out) {
    return guarded([&] {
        require(r, "report");
        require(out, "out");
        *out = dup(r->report.summary_json());
    });
}

hl_status hl_report_failures(const hl_report* r, uint64_t* out) {
    return guarded([&] {
        require(r, "report");
        require(out, "out");
        *out = r->report.failures;
    });
}

}  // extern "C"
