#include <math.h>
#include <stdio.h>
#include "tfweyl.h"

#define N 32

int main(void) {
    static double ones[N * N], re[N], im[N], phi[N];
    TfwSignal *g = NULL, *out = NULL;
    TfwField *sym = NULL;
    TfwOperator *op = NULL;
    bool ok = false;

    for (int k = 0; k < N * N; k++) ones[k] = 1.0;
    if (tfw_signal_gaussian(N, &g) != TFW_STATUS_OK) return 1;
    if (tfw_field_new(N, TFW_AXES_POSITION_FREQUENCY, ones, NULL, &sym) != TFW_STATUS_OK) return 2;
    if (tfw_weyl_matrix(sym, &op) != TFW_STATUS_OK) return 3;
    if (tfw_operator_apply(op, g, &out) != TFW_STATUS_OK) return 4;
    if (tfw_signal_copy_out(out, re, im, N) != TFW_STATUS_OK) return 5;
    if (tfw_signal_copy_out(g, phi, im, N) != TFW_STATUS_OK) return 6;
    for (int k = 0; k < N; k++)
        if (fabs(re[k] - phi[k]) > 1e-10) return 7;

    if (tfw_signal_new(7, ones, NULL, &out) != TFW_STATUS_INVALID_GRID) return 8;
    if (tfw_last_error_message() == NULL) return 9;
    printf("error text: %s\n", tfw_last_error_message());

    if (tfw_check_exponents("inf", "1", "2", "2", &ok) != TFW_STATUS_OK || !ok) return 10;

    tfw_signal_free(out);
    tfw_signal_free(g);
    tfw_operator_free(op);
    tfw_field_free(sym);
    printf("tfweyl %s ok\n", tfw_version());
    return 0;
}
