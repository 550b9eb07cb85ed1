#include <stdio.h>
#include <string.h>
#include "crosscap.h"

int main(void) {
    CrosscapPresentation *p = NULL;
    if (crosscap_presentation_new(5, 1, &p) != CROSSCAP_STATUS_OK) return 10;
    if (crosscap_presentation_generator_count(p) != 10) return 11;

    char *h = NULL;
    if (crosscap_presentation_h1(p, &h) != CROSSCAP_STATUS_OK) return 12;
    printf("%s\n", h);
    crosscap_string_free(h);
    crosscap_presentation_free(p);

    char *report = NULL;
    if (crosscap_verify_surface(4, 0, 3, &report) != CROSSCAP_STATUS_OK) return 13;
    crosscap_string_free(report);

    if (crosscap_presentation_new(0, 0, &p) == CROSSCAP_STATUS_OK) return 14;
    if (crosscap_last_error() == NULL) return 15;
    printf("%s\n", crosscap_last_error());
    return 0;
}
