#include <stdio.h>
#include <string.h>
#include "brauer.h"

int main(void) {
    BrElement *x = NULL;
    if (br_element_from_word("e1 e1", 2, "3", &x) != BR_STATUS_OK) return 1;
    char *text = NULL;
    if (br_element_to_string(x, &text) != BR_STATUS_OK) return 2;
    if (strcmp(text, "3 * (1,2)(1*,2*)") != 0) return 3;
    br_string_free(text);
    br_element_free(x);

    size_t dim = 99;
    if (br_hom_dim("o", "^", &dim) != BR_STATUS_OK || dim != 0) return 4;
    if (br_hom_dim("^x", "^", &dim) != BR_STATUS_PARSE) return 5;
    if (strlen(br_last_error_message()) == 0) return 6;

    BrReport *r = NULL;
    if (br_verify(1, 1, BR_MODE_EVEN, 2, BR_STRATEGY_AUTO, 1, 0, &r) != BR_STATUS_OK) return 7;
    BrReportSummary s;
    if (br_report_summary(r, &s) != BR_STATUS_OK) return 8;
    if (!s.iso || s.commutant_dim != 3) return 9;
    br_report_free(r);
    printf("ok %s\n", br_version());
    return 0;
}
