/* Copyright 2026 The ttgos Authors
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

/* C interface of libttgos. A session owns one parsed system; commands return
 * reports as newly allocated strings released with ttgos_free_string. */

#ifndef TTGOS_TTGOS_H_
#define TTGOS_TTGOS_H_

#include <stdint.h>

#if defined(TTGOS_BUILDING_LIBRARY)
#define TTGOS_API __attribute__((visibility("default")))
#else
#define TTGOS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ttgos_session ttgos_session;

typedef enum {
  TTGOS_OK = 0,
  TTGOS_ERR_PARSE = 1,      /* malformed document or path, failed validation */
  TTGOS_ERR_HYPOTHESIS = 2, /* not train track, not expanding, not injective */
  TTGOS_ERR_CAPACITY = 3,   /* a resource cap was exceeded */
  TTGOS_ERR_DOMAIN = 4,     /* command not applicable to this system */
  TTGOS_ERR_INTERNAL = 5,
  TTGOS_ERR_ARGUMENT = 6    /* unknown command or bad argument */
} ttgos_status;

typedef enum { TTGOS_FORMAT_JSON = 0, TTGOS_FORMAT_TEXT = 1 } ttgos_format;

/* Zero means "not set": the document value or the built-in default is used. */
typedef struct {
  uint64_t max_image_length;
  uint64_t max_v_entries;
  uint64_t max_v_length;
  uint64_t max_iterations;
  int max_power;
} ttgos_options;

TTGOS_API ttgos_status ttgos_open(const char* document, const ttgos_options* options,
                                  ttgos_session** out);
TTGOS_API void ttgos_close(ttgos_session* session);

/* Commands: validate, profile, turns-illegal, turns-special, vset, bounds,
 * inp, legalize, classify, fixed, growth, whitehead, gos-build, report.
 * `arg` is the power, path, loop or vertex where the command takes one.
 * For fixed, "v q" builds X* for f^q at vertex v instead of the least power
 * fixing every INP. */
TTGOS_API ttgos_status ttgos_run(ttgos_session* session, const char* command, const char* arg,
                                 ttgos_format format, char** out);

/* Message of the last failure on the calling thread; empty after success. */
TTGOS_API const char* ttgos_last_error(void);
TTGOS_API void ttgos_free_string(char* s);
TTGOS_API const char* ttgos_version(void);

#ifdef __cplusplus
}
#endif

#endif /* TTGOS_TTGOS_H_ */
