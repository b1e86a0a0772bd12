/* C interface to the loop-free update scheduler. */
#ifndef LFU_LFU_H
#define LFU_LFU_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#pragma GCC visibility push(default)
#endif

/* Status values double as process exit codes. */
typedef enum {
    LFU_OK = 0,
    LFU_ERR_INPUT = 1,    /* malformed input, unknown node, I/O failure */
    LFU_ERR_SAFETY = 2,   /* unsafe or invalid schedule, gadget mismatch */
    LFU_ERR_LIMIT = 3,    /* solver cap, time budget, solver precondition */
    LFU_ERR_INTERNAL = 4  /* invariant violation */
} lfu_status;

typedef enum { LFU_SLF = 0, LFU_RLF = 1 } lfu_mode;

typedef struct lfu_instance lfu_instance;
typedef struct lfu_schedule lfu_schedule;

typedef struct {
    int exact_node_cap;
    long cycle_cap;
    double time_budget_seconds;
} lfu_limits;

typedef struct {
    int trials;
    uint64_t seed;
    int exhaustive_limit;          /* 0 disables exhaustive rounds */
    const unsigned* delay_weights; /* NULL: uniform order per round */
    size_t delay_weight_count;
    int json;                      /* nonzero: JSON summary instead of text */
} lfu_sim_options;

/* Message and error name of the last failure on this thread ("" if none). */
const char* lfu_last_error(void);
const char* lfu_last_error_name(void);

/* Every char** result is heap allocated; release it with lfu_string_free. */
void lfu_string_free(char* s);

lfu_status lfu_mode_parse(const char* text, lfu_mode* out);

lfu_status lfu_instance_parse(const char* text, lfu_instance** out);
lfu_status lfu_instance_load(const char* path, lfu_instance** out);
lfu_status lfu_instance_render(const lfu_instance* inst, char** out);
size_t lfu_instance_size(const lfu_instance* inst);
size_t lfu_instance_interesting_count(const lfu_instance* inst);
void lfu_instance_free(lfu_instance* inst);

void lfu_limits_default(lfu_limits* limits);

/* solver: exact, two-leaf, majority, hitting-set or auto. limits may be NULL. */
lfu_status lfu_schedule_compute(const lfu_instance* inst, lfu_mode mode, const char* solver,
                                const lfu_limits* limits, lfu_schedule** out);
lfu_status lfu_schedule_parse(const lfu_instance* inst, const char* text, lfu_schedule** out);
lfu_status lfu_schedule_render(const lfu_instance* inst, const lfu_schedule* sched, char** out);
size_t lfu_schedule_round_count(const lfu_schedule* sched);
lfu_mode lfu_schedule_mode(const lfu_schedule* sched);
void lfu_schedule_free(lfu_schedule* sched);

/* State before round `round` (1-based) of sched; sched NULL means the initial state. */
lfu_status lfu_classify(const lfu_instance* inst, const lfu_schedule* sched, int round, char** out);
/* layout_text may be NULL. */
lfu_status lfu_export_dot(const lfu_instance* inst, const lfu_schedule* sched, int round, const char* layout_text,
                          char** out);

void lfu_sim_options_default(lfu_sim_options* opts);

/* Partition check, per-round safety check and simulation. The report is written
   even when the result is LFU_ERR_SAFETY. */
lfu_status lfu_verify(const lfu_instance* inst, const lfu_schedule* sched, lfu_mode mode,
                      const lfu_sim_options* opts, char** report);
lfu_status lfu_simulate(const lfu_instance* inst, const lfu_schedule* sched, lfu_mode mode,
                        const lfu_sim_options* opts, char** report);

/* Hitting-set file to gadget instance plus layout sidecar. */
lfu_status lfu_gen_hs(const char* hs_text, lfu_mode mode, char** instance_out, char** layout_out);

#if defined(__GNUC__)
#pragma GCC visibility pop
#endif

#ifdef __cplusplus
}
#endif

#endif
