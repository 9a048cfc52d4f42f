/* Minimal end-to-end use of the C interface.
 *
 * Build (from the workspace root, after `cargo build -p record-lomax-ffi`):
 *   gcc -std=c99 -Wall -I crates/record-lomax-ffi/include \
 *       crates/record-lomax-ffi/examples/smoke.c \
 *       target/debug/librecord_lomax_ffi.a -lm -o smoke
 */
#include <assert.h>
#include <math.h>
#include <stdio.h>
#include <string.h>
#include "record_lomax.h"

int main(void) {
    RlxRng *rng = rlx_rng_new(42, 0, 0);
    RlxRecords *records = NULL;
    assert(rlx_records_sample(5, 1.0, rng, &records) == RlxStatusOk);
    assert(rlx_records_len(records) == 5);

    RlxEstimate estimate;
    assert(rlx_mle_from_records(records, &estimate) == RlxStatusOk);
    printf("theta_hat from %zu records: %.17g\n", estimate.count, estimate.theta_hat);

    RlxSeriesResult series;
    assert(rlx_expected_pdf_hat(0.0, 1.0, 5, &series) == RlxStatusOk);
    assert(fabs(series.value - 1.25) < 1e-13);
    assert(!series.cancellation_flag);

    double oracle = 0.0;
    assert(rlx_quadrature_oracle(RlxOraclePdfHat, 0.5, 1.0, 8, &oracle) == RlxStatusOk);
    printf("true E[pdf_hat(0.5)] at m=8: %.17g\n", oracle);

    /* Failed calls leave a retrievable message. */
    double unused = 0.0;
    assert(rlx_pdf(-1.0, 0.0, &unused) == RlxStatusInvalidArgument);
    char buf[128];
    rlx_last_error_message(buf, sizeof buf);
    assert(strstr(buf, "invalid parameter") != NULL);

    rlx_records_free(records);
    rlx_rng_free(rng);
    puts("ok");
    return 0;
}
