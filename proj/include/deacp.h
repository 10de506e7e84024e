/*
 * Copyright 2026 The deacp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the deacp core. Every entry point reports a status code;
 * results are owned by the caller and released with deacp_result_free. */

#ifndef DEACP_H
#define DEACP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DEACP_API __declspec(dllexport)
#else
#define DEACP_API __attribute__((visibility("default")))
#endif

typedef enum deacp_status {
  DEACP_OK = 0,
  DEACP_ERR_ARGUMENT,
  DEACP_ERR_SYNTAX,
  DEACP_ERR_DECLARATION,
  DEACP_ERR_MALFORMED_CONDITION,
  DEACP_ERR_ENUMERATION_LIMIT,
  DEACP_ERR_EXPLORATION_LIMIT,
  DEACP_ERR_GUARDEDNESS,
  DEACP_ERR_SHAPE,
  DEACP_ERR_SCOPE,
  DEACP_ERR_CFAR_INAPPLICABLE,
  DEACP_ERR_USAGE,
  DEACP_ERR_INTERNAL
} deacp_status;

typedef struct deacp_spec deacp_spec;
typedef struct deacp_result deacp_result;

typedef struct deacp_options {
  int override_domain; /* nonzero: lo/hi replace the file's domain */
  long lo;
  long hi;
  size_t state_bound; /* 0: DEACP_STATE_BOUND or the built-in default */
} deacp_options;

DEACP_API const char* deacp_version(void);
DEACP_API const char* deacp_status_name(deacp_status status);
/* Message of the last failing call on this thread. */
DEACP_API const char* deacp_last_error(void);

DEACP_API deacp_status deacp_spec_parse(const char* text, const deacp_options* options,
                                        deacp_spec** out);
DEACP_API void deacp_spec_free(deacp_spec* spec);
DEACP_API deacp_status deacp_spec_domain(const deacp_spec* spec, long* lo, long* hi);

DEACP_API deacp_status deacp_describe(const deacp_spec* spec, deacp_result** out);
/* condition_labels: nonzero selects the condition-labelled semantics. */
DEACP_API deacp_status deacp_lts(const deacp_spec* spec, const char* process,
                                 int condition_labels, deacp_result** out);
/* ab: nonzero decides rooted ab-bisimilarity instead of rooted branching. */
DEACP_API deacp_status deacp_bisim(const deacp_spec* spec, const char* left, const char* right,
                                   int ab, deacp_result** out);
DEACP_API deacp_status deacp_linearize(const deacp_spec* spec, const char* process,
                                       deacp_result** out);
/* hidden: comma-separated action patterns, e.g. "a, send/1, v:=". */
DEACP_API deacp_status deacp_cfar(const deacp_spec* spec, const char* recspec, const char* var,
                                  const char* hidden, deacp_result** out);
DEACP_API deacp_status deacp_prove(const deacp_spec* spec, const char* left, const char* right,
                                   deacp_result** out);
DEACP_API deacp_status deacp_dnii(const deacp_spec* spec, const char* process,
                                  deacp_result** out);
DEACP_API deacp_status deacp_conjecture(size_t pairs, unsigned long long seed, long lo, long hi,
                                        deacp_result** out);

/* 1: equivalent / holds / certificate found; 0 otherwise. */
DEACP_API int deacp_result_verdict(const deacp_result* result);
DEACP_API const char* deacp_result_json(const deacp_result* result);
DEACP_API const char* deacp_result_text(const deacp_result* result);
DEACP_API void deacp_result_free(deacp_result* result);

#ifdef __cplusplus
}
#endif

#endif /* DEACP_H */
