#include <stdio.h>
#include <string.h>
#include "qcore.h"

int main(void) {
    QcSeries *s = NULL;
    if (qc_series_eval("f5^20/f1^4", 0, 5, &s) != QC_OK) return 10;
    int64_t want[] = {1, 4, 14, 40, 105};
    for (size_t n = 0; n < qc_series_order(s); n++) {
        int64_t v = 0;
        if (qc_series_coeff_i64(s, n, &v) != QC_OK || v != want[n]) return 11;
    }
    qc_series_free(s);

    char *json = NULL;
    int rc = qc_verify_claim("A(5,2; 5n+1) % 5 == 0", 100, &json);
    if (rc != QC_COUNTEREXAMPLE || strstr(json, "\"index\": 1") == NULL) return 12;
    qc_string_free(json);

    if (qc_series_eval("f1^^", 0, 5, &s) != QC_ERR_PARSE || qc_last_error() == NULL) return 13;
    printf("ok %s\n", qc_version());
    return 0;
}
