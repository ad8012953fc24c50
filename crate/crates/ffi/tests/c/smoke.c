#include <math.h>
#include <stdio.h>
#include "bootardl.h"

int main(void) {
    double x[] = {1, 0, 1, 1, 1, 2, 1, 3, 1, 4};
    double y[] = {1, 3, 5, 7, 9};
    BootardlFit *fit = NULL;
    if (bootardl_ols(x, 5, 2, y, &fit) != BOOTARDL_STATUS_OK) {
        fprintf(stderr, "ols: %s\n", bootardl_last_error());
        return 1;
    }
    double b[2];
    if (bootardl_fit_coefficients(fit, b, 2) != BOOTARDL_STATUS_OK) return 2;
    bootardl_fit_free(fit);
    if (fabs(b[0] - 1.0) > 1e-10 || fabs(b[1] - 2.0) > 1e-10) return 3;

    BootardlStatus s = bootardl_ols(x, 5, 2, y, NULL);
    if (s != BOOTARDL_STATUS_NULL_POINTER || bootardl_last_error() == NULL) return 4;

    BootardlTriple stats = {10.0, -4.0, 12.0};
    BootardlTriple cv = {6.0, -3.0, 9.0};
    if (bootardl_decide(stats, cv) != BOOTARDL_CLASSIFICATION_COINTEGRATED) return 5;
    printf("ok %s\n", bootardl_version());
    return 0;
}
