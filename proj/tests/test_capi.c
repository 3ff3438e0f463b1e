/* Plain C client of the shared library. */
#include <stdio.h>
#include <string.h>

#include "hyperloop/hyperloop.h"

static int failures = 0;

#define EXPECT(cond)                                                       \
    do {                                                                   \
        if (!(cond)) {                                                     \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                    \
        }                                                                  \
    } while (0)

static void test_folding(void) {
    hl_folding* fd = NULL;
    int m = 0, rank = 0;
    char* json = NULL;
    EXPECT(hl_folding_new("A3", "flip", &fd) == HL_OK);
    EXPECT(hl_folding_info(fd, &m, &rank) == HL_OK);
    EXPECT(m == 2 && rank == 2);
    EXPECT(hl_folding_json(fd, &json) == HL_OK);
    EXPECT(json && strstr(json, "\"folded_type\": \"C2\""));
    hl_string_free(json);
    hl_folding_free(fd);

    EXPECT(hl_folding_new("D4", "rot3", &fd) == HL_OK);
    EXPECT(hl_folding_info(fd, &m, &rank) == HL_OK);
    EXPECT(m == 3 && rank == 2);
    hl_folding_free(fd);

    fd = NULL;
    EXPECT(hl_folding_new("X9", "id", &fd) == HL_ERR_INVALID_TYPE);
    EXPECT(fd == NULL);
    EXPECT(strlen(hl_last_error()) > 0);
    EXPECT(hl_folding_new("A3", "rot3", &fd) == HL_ERR_NOT_AN_AUTOMORPHISM);
    EXPECT(hl_folding_new(NULL, "id", &fd) == HL_ERR_INVALID_ARGUMENT);
}

static void test_module(void) {
    int hw2[] = {2};
    int hw11[] = {1, 1};
    char* json = NULL;
    EXPECT(hl_module_json("A1", hw2, 1, "F2", 1, &json) == HL_OK);
    EXPECT(strstr(json, "\"dim\": 2,") && strstr(json, "\"weyl_dim\": 3"));
    hl_string_free(json);
    EXPECT(hl_module_json("A2", hw11, 2, "F3", 0, &json) == HL_OK);
    EXPECT(strstr(json, "\"weyl_dim\": 8") && strstr(json, "\"simple_dim\": 7"));
    hl_string_free(json);
    EXPECT(hl_module_json("A2", hw2, 1, "Q", 0, &json) == HL_ERR_INVALID_ARGUMENT);
}

static void test_drinfeld(void) {
    hl_folding* fd = NULL;
    char* json = NULL;
    hl_status s;
    EXPECT(hl_folding_new("A3", "flip", &fd) == HL_OK);
    EXPECT(hl_drinfeld_json(fd, "F7", "1:(1-2u)", &json) == HL_OK);
    EXPECT(strstr(json, "\"a\": \"2\""));
    hl_string_free(json);
    s = hl_drinfeld_json(fd, "F5", "1:(1+u+u^2)", &json);
    EXPECT(s == HL_ERR_NOT_SPLIT);
    EXPECT(hl_status_is_precondition(s));
    EXPECT(strstr(hl_last_error(), "suggested extension degree 2"));
    EXPECT(!hl_status_is_precondition(HL_ERR_INVALID_ARGUMENT));
    EXPECT(strcmp(hl_status_name(HL_ERR_NOT_SPLIT), "NotSplit") == 0);
    hl_folding_free(fd);
}

static void test_reports(void) {
    hl_report* r = NULL;
    hl_folding* fd = NULL;
    size_t pass = 0, fail = 0, skip = 0;
    char *a = NULL, *b = NULL;
    long long pts[] = {2, 3};

    EXPECT(hl_verify_heisenberg(4, &r) == HL_OK);
    EXPECT(hl_report_passed(r));
    EXPECT(hl_report_counts(r, &pass, &fail, &skip) == HL_OK);
    EXPECT(pass == 4 && fail == 0);
    EXPECT(hl_report_json(r, 0, &a) == HL_OK);
    EXPECT(strstr(a, "\"timing\": null"));
    hl_report_free(r);
    EXPECT(hl_verify_heisenberg(4, &r) == HL_OK);
    EXPECT(hl_report_json(r, 0, &b) == HL_OK);
    EXPECT(strcmp(a, b) == 0);
    hl_string_free(a);
    hl_string_free(b);
    hl_report_free(r);

    EXPECT(hl_folding_new("A2", "flip", &fd) == HL_OK);
    EXPECT(hl_verify_restriction(fd, "F5", "w1@2", &r) == HL_OK);
    EXPECT(hl_report_passed(r));
    hl_report_free(r);
    EXPECT(hl_verify_restriction_grid(fd, "F7", pts, 2, 1, &r) == HL_OK);
    EXPECT(hl_report_passed(r));
    hl_report_free(r);
    EXPECT(hl_verify_twisted_basis(fd, &r) == HL_OK);
    EXPECT(hl_report_passed(r));
    hl_report_free(r);
    EXPECT(hl_verify_twisted_brackets(fd, &r) == HL_OK);
    EXPECT(hl_report_passed(r));
    hl_report_free(r);
    hl_folding_free(fd);

    EXPECT(hl_verify_divided_sums(4, "F7", 1, &r) == HL_OK);
    EXPECT(hl_report_passed(r));
    hl_report_free(r);
    EXPECT(hl_verify_garland(2, "F7", &r) == HL_OK);
    EXPECT(hl_report_passed(r));
    EXPECT(hl_report_counts(r, &pass, &fail, &skip) == HL_OK);
    EXPECT(skip > 0);
    hl_report_free(r);
    EXPECT(hl_verify_garland(2, "", &r) == HL_ERR_INVALID_ARGUMENT);
    EXPECT(hl_verify_heisenberg(0, &r) == HL_ERR_INVALID_ARGUMENT);
}

int main(void) {
    test_folding();
    test_module();
    test_drinfeld();
    test_reports();
    if (failures) fprintf(stderr, "%d failures\n", failures);
    else printf("all C API checks passed\n");
    return failures ? 1 : 0;
}
