/* voxplore C API: multi-robot 3D exploration simulator.
 *
 * The library is a C++ core exposed through opaque handles and status codes
 * so it can be driven from C, scripting FFIs, or the bundled CLI. All
 * functions returning vxp_status set a thread-local error message readable
 * via vxp_last_error() on failure. Handles are single-owner: destroy every
 * handle you create. Distinct handles may be used from distinct threads;
 * a single handle must not be shared without external synchronization.
 */
#ifndef VOXPLORE_H
#define VOXPLORE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vxp_status {
  VXP_OK = 0,
  VXP_ERR_INVALID_ARGUMENT = 1,
  VXP_ERR_PARSE = 2,
  VXP_ERR_VALIDATION = 3,
  VXP_ERR_IO = 4,
  VXP_ERR_INTERNAL = 5
} vxp_status;

typedef struct vxp_world vxp_world;
typedef struct vxp_scenario vxp_scenario;
typedef struct vxp_result vxp_result;

const char* vxp_version(void);

/* Message describing the most recent failure on this thread. */
const char* vxp_last_error(void);

/* ---- ground-truth worlds ---- */

/* kind: "empty_box", "rooms_and_corridors" or "building_shell". */
vxp_status vxp_world_generate(const char* kind, int32_t nx, int32_t ny, int32_t nz,
                              uint64_t seed, int32_t fire_count, vxp_world** out);
vxp_status vxp_world_load(const char* path, vxp_world** out);
vxp_status vxp_world_save(const vxp_world* world, const char* path);
int64_t vxp_world_traversable_count(const vxp_world* world);
void vxp_world_destroy(vxp_world* world);

/* ---- scenarios ---- */

vxp_status vxp_scenario_parse(const char* json_text, vxp_scenario** out);
vxp_status vxp_scenario_parse_file(const char* path, vxp_scenario** out);
vxp_status vxp_scenario_clone(const vxp_scenario* scenario, vxp_scenario** out);

/* Canonical JSON (all defaults explicit). Free with vxp_string_free. */
vxp_status vxp_scenario_canonical_json(const vxp_scenario* scenario, char** out);
vxp_status vxp_scenario_digest(const vxp_scenario* scenario, char** out);

/* Strategy token: "<kind>" or "<kind>/<coordination>", e.g.
 * "cost_utility/hungarian". */
vxp_status vxp_scenario_set_strategy(vxp_scenario* scenario, const char* token);
vxp_status vxp_scenario_set_seed(vxp_scenario* scenario, uint64_t seed);
void vxp_scenario_destroy(vxp_scenario* scenario);

/* ---- runs ---- */

/* Runs the scenario to completion or max_ticks. A run that stops at
 * max_ticks still succeeds; check vxp_result_completed. */
vxp_status vxp_run(const vxp_scenario* scenario, vxp_result** out);

/* Cross product of strategy tokens and seeds over the base scenario;
 * renders the comparison CSV (data rows sorted by strategy then seed, plus a
 * commented per-strategy summary block). Free the CSV with vxp_string_free.
 * any_unfinished (nullable) reports whether some run stopped at max_ticks. */
vxp_status vxp_compare(const vxp_scenario* scenario, const char* const* strategies,
                       int64_t strategy_count, const uint64_t* seeds, int64_t seed_count,
                       char** out_csv, int* any_unfinished);

int vxp_result_completed(const vxp_result* result);
int64_t vxp_result_ticks(const vxp_result* result);
double vxp_result_coverage(const vxp_result* result);
double vxp_result_total_distance(const vxp_result* result);
int64_t vxp_result_map_nodes(const vxp_result* result);
int64_t vxp_result_detection_count(const vxp_result* result);
vxp_status vxp_result_detection(const vxp_result* result, int64_t index, int32_t* x,
                                int32_t* y, int32_t* z, int64_t* tick, int32_t* robot_id);

/* Rendered documents; free with vxp_string_free. */
vxp_status vxp_result_metrics_csv(const vxp_result* result, char** out);
vxp_status vxp_result_summary_json(const vxp_result* result, char** out);

vxp_status vxp_result_save_map(const vxp_result* result, const char* path);
vxp_status vxp_result_save_world(const vxp_result* result, const char* path);
void vxp_result_destroy(vxp_result* result);

void vxp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* VOXPLORE_H */
