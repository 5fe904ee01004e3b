// Copyright 2026 The asynclp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the asynclp solver library.
 *
 * Objects are opaque handles created by alp_*_create / alp_*_load style calls
 * and released with the matching alp_*_free. Every fallible call returns an
 * alp_status; on failure alp_last_error() describes the problem (thread
 * local, valid until the next failing call on the same thread). Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with alp_string_free.
 */

#ifndef ASYNCLP_ASYNCLP_H_
#define ASYNCLP_ASYNCLP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ASYNCLP_BUILDING)
#    define ALP_API __declspec(dllexport)
#  else
#    define ALP_API __declspec(dllimport)
#  endif
#else
#  define ALP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum alp_status {
  ALP_OK = 0,
  ALP_ERR_INVALID_ARGUMENT = 1,
  ALP_ERR_DIMENSION = 2,
  ALP_ERR_PARSE = 3,
  ALP_ERR_SINGULAR = 4,
  ALP_ERR_TOO_LARGE = 5,
  ALP_ERR_IO = 6,
  ALP_ERR_INTERNAL = 7
} alp_status;

typedef enum alp_mode {
  ALP_MODE_SYNC = 0,
  ALP_MODE_SWEEP = 1,
  ALP_MODE_BERNOULLI = 2,
  ALP_MODE_RANDOMK = 3,
  ALP_MODE_DISTRIBUTED = 4
} alp_mode;

typedef struct alp_problem alp_problem;
typedef struct alp_system alp_system;
typedef struct alp_result alp_result;

typedef struct alp_solve_options {
  alp_mode mode;
  double p;                 /* firing probability, bernoulli mode */
  int workers;              /* distributed mode */
  uint64_t seed;
  double max_equiv_iters;
  double tol;
  const char* homotopy;     /* "none", "bp", "ramp:<a0>:<steps>", "const:<g>" */
} alp_solve_options;

typedef struct alp_experiment_options {
  const char* problem;      /* "chebyshev", "bp", "lp" */
  int n;
  int m;
  int sparsity;
  alp_mode mode;
  const double* p_values;
  size_t p_count;
  int workers;
  int trials;
  uint64_t seed;
  double max_equiv_iters;
  double tol;
  const char* homotopy;
  int threads;
  const char* out_dir;      /* NULL or "" to skip writing files */
} alp_experiment_options;

ALP_API const char* alp_version(void);
ALP_API const char* alp_last_error(void);
ALP_API const char* alp_status_name(alp_status status);
ALP_API void alp_string_free(char* s);

ALP_API alp_status alp_mode_parse(const char* name, alp_mode* out);

/* Problems */
ALP_API alp_status alp_problem_load(const char* path, alp_problem** out);
ALP_API alp_status alp_problem_parse(const char* json_text, alp_problem** out);
/* A is row-major m x n. */
ALP_API alp_status alp_problem_standard(size_t m, size_t n, const double* A,
                                        const double* b, const double* f,
                                        alp_problem** out);
/* kind: "chebyshev", "bp", "lp". Unused size arguments are ignored. */
ALP_API alp_status alp_problem_generate(const char* kind, int n, int m,
                                        int sparsity, uint64_t seed,
                                        alp_problem** out);
ALP_API alp_status alp_problem_to_json(const alp_problem* p, char** out);
/* JSON array of violation messages; "[]" when the problem is valid. */
ALP_API alp_status alp_problem_validate(const alp_problem* p, char** out);
/* Brute-force reference solution as JSON (small instances only). */
ALP_API alp_status alp_problem_oracle(const alp_problem* p, char** out);
ALP_API void alp_problem_free(alp_problem* p);

/* Stationarity systems */
ALP_API alp_status alp_system_build(const alp_problem* p, alp_system** out);
ALP_API size_t alp_system_nonlinear_count(const alp_system* s);
ALP_API size_t alp_system_coordinate_count(const alp_system* s);
/* Text dump of G, G' and e; see README for the layout. */
ALP_API alp_status alp_system_dump(const alp_system* s, const char* path);
ALP_API void alp_system_free(alp_system* s);

/* Solving */
ALP_API void alp_solve_options_init(alp_solve_options* o);
ALP_API alp_status alp_solve(const alp_system* s, const alp_solve_options* o,
                             alp_result** out);
ALP_API int alp_result_converged(const alp_result* r);
ALP_API double alp_result_residual(const alp_result* r);
ALP_API double alp_result_objective(const alp_result* r);
ALP_API double alp_result_equivalent_iterations(const alp_result* r);
ALP_API size_t alp_result_trajectory_length(const alp_result* r);
/* Copies up to `len` values of the named variable; returns its length in
 * *out_len. */
ALP_API alp_status alp_result_variable(const alp_result* r, const char* name,
                                       double* values, size_t len,
                                       size_t* out_len);
ALP_API alp_status alp_result_solution_json(const alp_result* r, char** out);
ALP_API alp_status alp_result_write_solution(const alp_result* r,
                                             const char* path);
ALP_API alp_status alp_result_write_trajectory(const alp_result* r,
                                               const char* path);
/* Distributed mode only; "[]" otherwise. */
ALP_API alp_status alp_result_write_worker_reports(const alp_result* r,
                                                   const char* path);
ALP_API void alp_result_free(alp_result* r);

/* Experiments */
ALP_API alp_status alp_experiment_preset(const char* name,
                                         alp_experiment_options* out);
ALP_API void alp_experiment_options_init(alp_experiment_options* o);
/* Summary JSON in *summary (may be NULL). */
ALP_API alp_status alp_experiment_run(const alp_experiment_options* o,
                                      char** summary);

#ifdef __cplusplus
}
#endif

#endif  /* ASYNCLP_ASYNCLP_H_ */
