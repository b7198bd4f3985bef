/* The public header must compile as C; exercises a single round trip. */
#include "singmod/singmod.h"

#include <stdio.h>
#include <string.h>

int main(void)
{
    sm_context * ctx = NULL;
    char * json = NULL;
    sm_report * report = NULL;
    sm_norm_options opts;
    int ok = 1;

    if (sm_context_create(&ctx) != SM_OK)
        return 1;
    if (sm_classpoly_json(ctx, -4, &json) != SM_OK || strstr(json, "\"-1728\"") == NULL)
        ok = 0;
    sm_string_free(json);

    sm_norm_options_init(&opts);
    if (sm_norm(ctx, -3, -7, 1, &opts, &report) != SM_OK || sm_report_outcome(report) != SM_OUTCOME_PASS)
        ok = 0;
    if (report && sm_report_json(report, 0, &json) == SM_OK) {
        /* 3375^4 */
        if (strstr(json, "\"129746337890625\"") == NULL)
            ok = 0;
        sm_string_free(json);
    }
    sm_report_destroy(report);

    if (sm_classpoly_json(ctx, -5, &json) != SM_E_DOMAIN || strlen(sm_context_last_error(ctx)) == 0)
        ok = 0;
    sm_context_destroy(ctx);
    printf("%s\n", ok ? "ok" : "FAILED");
    return ok ? 0 : 1;
}
