#include <stdio.h>
#include <string.h>

#include "arbor.h"

static const char *INV1D =
    "{\"kind\":\"comm\",\"convention\":\"divided-power\",\"dimension\":1,\"truncation\":5,"
    "\"components\":[{\"coeffs\":[{\"alpha\":[1],\"value\":\"1\"},{\"alpha\":[2],\"value\":\"-1\"}]}]}";

int main(void) {
    uint64_t n = 0;
    if (arbor_count_proper_trees(5, false, &n) != ARBOR_STATUS_OK) {
        fprintf(stderr, "count: %s\n", arbor_last_error_message());
        return 1;
    }
    ArborCommMap *f = NULL, *g = NULL;
    if (arbor_comm_map_from_json(INV1D, &f) != ARBOR_STATUS_OK ||
        arbor_comm_invert(f, ARBOR_INVERT_PATH_RECURSIVE, &g) != ARBOR_STATUS_OK) {
        fprintf(stderr, "invert: %s\n", arbor_last_error_message());
        return 1;
    }
    char *json = NULL;
    arbor_comm_map_to_json(g, &json);
    int found = strstr(json, "{\"alpha\":[5],\"value\":\"105\"}") != NULL;
    arbor_string_free(json);
    arbor_comm_map_free(g);
    arbor_comm_map_free(f);

    ArborCommMap *bad = NULL;
    if (arbor_comm_map_from_json("{", &bad) != ARBOR_STATUS_PARSE_ERROR) {
        return 1;
    }
    printf("%llu %s ok\n", (unsigned long long)n, found ? "1,1,3,15,105" : "missing");
    return 0;
}
