#include <stdio.h>
#include <string.h>

#include "heavenly.h"

int main(void) {
    HvPolynomial *p = NULL;
    size_t degree = 0;
    char *primes = NULL;
    HvVerdict *v = NULL;
    HvVerdictStatus status;
    uint64_t closure = 0;

    if (hv_polynomial_parse("x^4 - 2", &p) != HV_STATUS_OK) return 10;
    if (hv_splitting_degree(p, NULL, 512, &degree) != HV_STATUS_OK || degree != 8) return 11;
    hv_polynomial_free(p);

    if (hv_polynomial_parse("x^2 - 5", &p) != HV_STATUS_OK) return 12;
    if (hv_odd_ramified_primes(p, &primes) != HV_STATUS_OK || strcmp(primes, "5") != 0) return 13;
    hv_string_free(primes);
    hv_polynomial_free(p);

    if (hv_classify_json("{\"kind\":\"jacobian\",\"base_field\":\"Q\",\"f\":[0,-1,0,0,0,1]}", 512, &v) != HV_STATUS_OK) return 14;
    hv_verdict_status(v, &status);
    hv_verdict_closure_degree(v, &closure);
    hv_verdict_free(v);
    if (status != HV_VERDICT_STATUS_HEAVENLY || closure != 2) return 15;

    if (hv_polynomial_parse("x^", &p) != HV_STATUS_INVALID_INPUT) return 16;
    printf("ok: %s\n", hv_last_error());
    return 0;
}
