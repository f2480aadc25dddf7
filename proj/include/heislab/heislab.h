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

#ifndef HEISLAB_HEISLAB_H
#define HEISLAB_HEISLAB_H

/**
 * @file heislab.h
 * @brief C interface of the heislab shared library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returns an hl_status; on failure hl_last_error() describes the
 * problem (thread local, valid until the next call on the same thread).
 * Strings returned through char** are released with hl_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(HEISLAB_BUILDING_LIBRARY)
#define HL_API __attribute__((visibility("default")))
#else
#define HL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hl_status {
    HL_OK = 0,
    HL_ERR_INVALID_ARGUMENT = 1,
    HL_ERR_CONFIG = 2,
    HL_ERR_OUT_OF_RANGE = 3,
    HL_ERR_DOMAIN = 4,
    HL_ERR_OVERFLOW = 5,
    HL_ERR_INTERNAL = 6
} hl_status;

typedef struct hl_group hl_group;
typedef struct hl_set hl_set;
typedef struct hl_report hl_report;

HL_API const char* hl_version(void);
HL_API const char* hl_last_error(void);
HL_API const char* hl_status_name(hl_status status);
HL_API void hl_string_free(char* s);

/* Groups: tag "H" (with n in [1,4]), "Aff" or "Z". Elements are canonical codes. */
HL_API hl_status hl_group_create(const char* tag, uint32_t p, unsigned n, hl_group** out);
HL_API void hl_group_free(hl_group* g);
HL_API hl_status hl_group_order(const hl_group* g, uint64_t* out);
HL_API hl_status hl_group_mul(const hl_group* g, uint64_t a, uint64_t b, uint64_t* out);
HL_API hl_status hl_group_inverse(const hl_group* g, uint64_t a, uint64_t* out);
HL_API hl_status hl_group_commutator(const hl_group* g, uint64_t a, uint64_t b, uint64_t* out);
HL_API hl_status hl_conjugacy_class_count(const hl_group* g, uint64_t* out);

/* Sets */
HL_API hl_status hl_set_create(const hl_group* g, const uint64_t* codes, size_t count, hl_set** out);
HL_API hl_status hl_set_from_json(const char* json, hl_set** out);
HL_API hl_status hl_set_to_json(const hl_set* s, char** out);
HL_API void hl_set_free(hl_set* s);
HL_API hl_status hl_set_size(const hl_set* s, uint64_t* out);
/* Copies up to capacity codes in ascending order; *written receives the set size. */
HL_API hl_status hl_set_codes(const hl_set* s, uint64_t* buffer, size_t capacity, size_t* written);
HL_API hl_status hl_set_product(const hl_set* a, const hl_set* b, hl_set** out);
HL_API hl_status hl_set_commutator(const hl_set* a, const hl_set* b, hl_set** out);
HL_API hl_status hl_set_signed_product(const hl_set* a, const int* signs, size_t length, hl_set** out);
HL_API hl_status hl_center_coverage(const hl_set* s, uint64_t* count, int* full);

/* Energies */
HL_API hl_status hl_field_energy(uint32_t p, const uint32_t* elements, size_t count, int multiplicative, uint64_t* out);
HL_API hl_status hl_group_energy(const hl_set* a, const hl_set* b, uint64_t* out);
HL_API hl_status hl_group_energy_fourier(const hl_set* a, uint64_t* out);
HL_API hl_status hl_parseval_residual(const hl_set* a, int64_t* out);

/* Incidences of points (xy pairs) with lines (vertical, slope, intercept triples). */
HL_API hl_status hl_count_incidences(uint32_t p, const uint32_t* points, size_t point_count, const uint32_t* lines,
                                     size_t line_count, uint64_t* out);

/* Freiman checks on a partial map given as JSON; *witness is NULL when the map is a homomorphism. */
HL_API hl_status hl_freiman_hom(const char* map_json, unsigned s, unsigned workers, int* is_hom, char** witness);
HL_API hl_status hl_freiman_iso(const char* map_json, unsigned s, unsigned workers, int* is_iso);

/* Scenarios: config is a JSON object with "scenario" and optional parameters. */
HL_API hl_status hl_run_scenario(const char* config_json, hl_report** out);
HL_API void hl_report_free(hl_report* r);
HL_API hl_status hl_report_csv(const hl_report* r, char** out);
HL_API hl_status hl_report_jsonl(const hl_report* r, char** out);
HL_API hl_status hl_report_summary(const hl_report* r, char** out);
HL_API hl_status hl_report_failures(const hl_report* r, uint64_t* out);

#ifdef __cplusplus
}
#endif

#endif /* HEISLAB_HEISLAB_H */
