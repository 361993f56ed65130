#ifndef DLAB_H
#define DLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(DLAB_BUILDING)
#define DLAB_API __attribute__((visibility("default")))
#else
#define DLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  DL_OK = 0,
  DL_ERR_INVALID_ARGUMENT = 1,
  DL_ERR_BUDGET = 2,
  DL_ERR_OUT_OF_DOMAIN = 3,
  DL_ERR_PARSE = 4,
  DL_ERR_INTERNAL = 5
} dl_status;

typedef struct dl_graph dl_graph;
typedef struct dl_group dl_group;
typedef struct dl_qimap dl_qimap;

/* Message of the last failed call on this thread; "" if none. */
DLAB_API const char* dl_last_error(void);
/* Strings returned through char** outputs are malloc'd; release them here. */
DLAB_API void dl_string_free(char* s);
DLAB_API const char* dl_version(void);

/* DL_d^k(q). Any d >= 2, q >= 2, k >= 1. */
DLAB_API dl_status dl_graph_create(int d, int q, int k, dl_graph** out);
DLAB_API void dl_graph_free(dl_graph* g);
DLAB_API dl_status dl_graph_degree(const dl_graph* g, int* out);
/* format: "dot" or "json". */
DLAB_API dl_status dl_graph_ball(const dl_graph* g, int radius, const char* format, int workers, char** out);
DLAB_API dl_status dl_graph_box(const dl_graph* g, int h, const char* format, int workers, char** out);
/* Comma separated sphere sizes of the ball around the base vertex. */
DLAB_API dl_status dl_graph_spheres(const dl_graph* g, int radius, int workers, char** out);

typedef struct {
  int d, q, k;
  int radius, h, r; /* -1: suite default */
  const int* hs;    /* heights for scans; NULL: suite default */
  size_t n_hs;
  const char* map;  /* boundary-map JSON; NULL: default */
  uint64_t seed;
  int workers;
} dl_suite_config;

DLAB_API void dl_suite_config_init(dl_suite_config* c);
/* Runs a named suite; *passed is 1 iff every check passed. */
DLAB_API dl_status dl_verify(const char* suite, const dl_suite_config* c, int* passed, char** table);
/* Newline separated suite names. */
DLAB_API const char* dl_suite_names(void);

/* Psi over DL_d(q) from a JSON array of d boundary-map descriptions; NULL
   map_json selects alpha on the first d-1 trees. */
DLAB_API dl_status dl_qimap_create(int d, int q, const char* map_json, dl_qimap** out);
DLAB_API void dl_qimap_free(dl_qimap* m);
/* 1 / prod lambda_i as "n" or "n/m". */
DLAB_API dl_status dl_qimap_inv_lambda(const dl_qimap* m, char** out);

/* Chain sums with fibers compared against k, over standard boxes of heights hs.
   r <= 0 uses the map's default. format: "csv" or "json". */
DLAB_API dl_status dl_qilab_chain(const dl_qimap* m, int k, const int* hs, size_t n_hs, int r, int workers,
                                  const char* format, char** out);
/* kind: "bounded" or "divergence". */
DLAB_API dl_status dl_qilab_chain_assert(const dl_qimap* m, const char* kind, int k, const int* hs, size_t n_hs, int r,
                                         int workers, int* passed, char** table);
DLAB_API dl_status dl_qilab_fibers(const dl_qimap* m, int h, int r, int workers, const char* format, char** out);
/* Sampled distortion over the ball of the given radius around the base. */
DLAB_API dl_status dl_qilab_distortion(const dl_qimap* m, int radius, size_t samples, uint64_t seed,
                                       const char* format, char** out);
DLAB_API dl_status dl_qilab_umap(int d, int q, int k, int tiles, int workers, const char* format, char** out);

/* Gamma_d(q); q prime, d - 1 <= q. */
DLAB_API dl_status dl_group_create(int q, int d, dl_group** out);
DLAB_API void dl_group_free(dl_group* g);
DLAB_API dl_status dl_group_growth_csv(const dl_group* g, int radius, int workers, char** out);
/* JSON array of {"element":{exps,num,den},"length":n} in BFS order. */
DLAB_API dl_status dl_group_ball_json(const dl_group* g, int radius, int workers, char** out);

#ifdef __cplusplus
}
#endif

#endif
