#include <stdio.h>
#include <string.h>

#include "approval_dhondt.h"

static const char *ELECTION =
    "candidates: a b c d e f g\n"
    "seats: 3\n"
    "voters: 45000\n"
    "ballot 10000: a b\n"
    "ballot 6000: a c\n"
    "ballot 4000: b\n"
    "ballot 5500: c\n"
    "ballot 9500: d\n"
    "ballot 5000: e f g\n"
    "ballot 3000: e\n";

int main(void) {
    AdElection *e = NULL;
    if (ad_election_parse(ELECTION, &e) != AD_STATUS_OK) {
        char msg[256];
        ad_last_error(msg, sizeof msg, NULL);
        fprintf(stderr, "parse: %s\n", msg);
        return 1;
    }
    AdReport *r = NULL;
    if (ad_compute(e, "odh", AD_TIE_MODE_DETERMINISTIC, &r) != AD_STATUS_OK) {
        return 1;
    }
    uint64_t mask = 0;
    ad_report_winner_mask(r, 0, &mask);
    char value[64];
    ad_maxmin_support(e, 0x7, value, sizeof value, NULL);
    AdVerdict v;
    ad_check_axiom(e, "odh", "jr", AD_TIE_MODE_ENUMERATED, &v);
    printf("winners=%llx maxmin=%s jr=%d\n", (unsigned long long)mask, value, (int)v);
    ad_report_free(r);
    ad_election_free(e);
    return 0;
}
