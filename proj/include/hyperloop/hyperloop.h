/* C interface to the hyperloop core. All functions return an hl_status; on failure a message is
 * available from hl_last_error() (per thread). Strings returned through char** are owned by the
 * caller and released with hl_string_free. */
#ifndef HYPERLOOP_H
#define HYPERLOOP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hl_status {
    HL_OK = 0,
    HL_ERR_INVALID_ARGUMENT = 1,
    HL_ERR_INVALID_TYPE = 2,
    HL_ERR_NOT_AN_AUTOMORPHISM = 3,
    HL_ERR_DENOMINATOR_NOT_INVERTIBLE = 4,
    HL_ERR_NO_PRIMITIVE_ROOT = 5,
    HL_ERR_CHAR_EQUALS_ORDER = 6,
    HL_ERR_CHAR_TWO_A2N = 7,
    HL_ERR_RING_LACKS_ROOTS = 8,
    HL_ERR_NOT_SPLIT = 9,
    HL_ERR_DEGREE_OUT_OF_RANGE = 10,
    HL_ERR_NOT_SL2 = 11,
    HL_ERR_NOT_HIGHEST_L_WEIGHT = 12,
    HL_ERR_LATTICE_DENOMINATOR = 13,
    HL_ERR_ZERO_EVALUATION_POINT = 14,
    HL_ERR_INTERNAL = 15
} hl_status;

typedef struct hl_folding hl_folding;
typedef struct hl_report hl_report;

const char* hl_version(void);
const char* hl_status_name(hl_status status);
/* Nonzero for violated mathematical preconditions (CharEqualsOrder, NotSplit, CharTwoA2n, ...). */
int hl_status_is_precondition(hl_status status);
const char* hl_last_error(void);
void hl_string_free(char* s);

/* type "A3", automorphism "id" | "flip" | "rot3" | 1-based permutation "1,3,2" */
hl_status hl_folding_new(const char* type, const char* automorphism, hl_folding** out);
void hl_folding_free(hl_folding* fd);
hl_status hl_folding_info(const hl_folding* fd, int* m, int* folded_rank);
hl_status hl_folding_json(const hl_folding* fd, char** json_out);

/* Weyl module W(hw) over the field ("Q", "F5", "F5^2", ...) with the dimension of its simple
 * quotient; simple != 0 reports the character of the simple quotient instead. */
hl_status hl_module_json(const char* type, const int* hw, size_t n, const char* field, int simple, char** json_out);

/* Standard decomposition of a twisted l-weight given as text ("1:(1-2u),w2@3"). */
hl_status hl_drinfeld_json(const hl_folding* fd, const char* field, const char* pi, char** json_out);

hl_status hl_verify_heisenberg(int n_max, hl_report** out);
hl_status hl_verify_divided_sums(int n_max, const char* field, uint64_t seed, hl_report** out);
hl_status hl_verify_twisted_basis(const hl_folding* fd, hl_report** out);
hl_status hl_verify_twisted_brackets(const hl_folding* fd, hl_report** out);
/* fields: comma-separated list, e.g. "Q,F5,F7" */
hl_status hl_verify_garland(int rank_max, const char* fields, hl_report** out);
hl_status hl_verify_restriction(const hl_folding* fd, const char* field, const char* pi, hl_report** out);
/* All products of at most `height` fundamentals at the given points. */
hl_status hl_verify_restriction_grid(const hl_folding* fd, const char* field, const long long* points, size_t n_points,
                                     int height, hl_report** out);

int hl_report_passed(const hl_report* r);
hl_status hl_report_counts(const hl_report* r, size_t* passed, size_t* failed, size_t* skipped);
hl_status hl_report_json(const hl_report* r, int with_timing, char** json_out);
void hl_report_free(hl_report* r);

#ifdef __cplusplus
}
#endif

#endif
