/* idealtop — exact toolkit for ideal convergence, tail-sumset criteria and
 * characterized subgroups.
 *
 * C interface of the shared library: opaque handles, integer status codes,
 * JSON result payloads. Strings returned through char** are heap-allocated
 * and must be released with idealtop_string_free.
 */
#ifndef IDEALTOP_H
#define IDEALTOP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define IDEALTOP_API __declspec(dllexport)
#else
#define IDEALTOP_API __attribute__((visibility("default")))
#endif

typedef enum idealtop_status {
  IDEALTOP_OK = 0,
  IDEALTOP_ERR_PARSE = 1,
  IDEALTOP_ERR_DOMAIN = 2,      /* zero denominator, shape mismatch, ... */
  IDEALTOP_ERR_CYCLE = 3,       /* residue cycle not detected */
  IDEALTOP_ERR_BUDGET = 4,      /* enumeration exceeded its element budget */
  IDEALTOP_ERR_CHAIN = 5,       /* descriptor chain not ascending */
  IDEALTOP_ERR_TOO_LARGE = 6,   /* group beyond the scan bound */
  IDEALTOP_ERR_NO_EXTRACT = 7,  /* extraction requested on a divergent pair */
  IDEALTOP_ERR_HORIZON = 8,     /* horizon-limited input */
  IDEALTOP_ERR_IO = 9,
  IDEALTOP_ERR_INTERNAL = 10
} idealtop_status;

typedef enum idealtop_verdict {
  IDEALTOP_VERDICT_IN = 0,
  IDEALTOP_VERDICT_OUT = 1,
  IDEALTOP_VERDICT_UNDECIDED = 2
} idealtop_verdict;

typedef struct idealtop_seq idealtop_seq;
typedef struct idealtop_descriptor idealtop_descriptor;
typedef struct idealtop_ideal idealtop_ideal;

typedef struct idealtop_params {
  uint32_t kmax;        /* neighborhood scales to report */
  uint64_t m;           /* tail horizon M / fold bound, verb dependent */
  uint64_t horizon;     /* index horizon H */
  int64_t window;       /* magnitude window W for integer sumsets */
  uint32_t qmax;        /* denominator bound for circle scans */
  uint32_t nmax;        /* stage bound for the cell decomposition */
  uint64_t budget;      /* enumeration element budget */
  int no_cache;         /* nonzero disables the residue cache */
  const char* cache_dir; /* NULL = IDEALTOP_CACHE_DIR environment variable */
} idealtop_params;

IDEALTOP_API void idealtop_params_init(idealtop_params* p);

IDEALTOP_API const char* idealtop_version(void);
/* Message of the most recent failure on this thread. */
IDEALTOP_API const char* idealtop_last_error(void);
IDEALTOP_API void idealtop_string_free(char* s);

/* --- handles ------------------------------------------------------------ */

IDEALTOP_API idealtop_status idealtop_seq_parse(const char* text, idealtop_seq** out);
IDEALTOP_API void idealtop_seq_free(idealtop_seq* s);
IDEALTOP_API idealtop_status idealtop_seq_str(const idealtop_seq* s, char** out);

IDEALTOP_API idealtop_status idealtop_descriptor_parse(const char* text,
                                                       idealtop_descriptor** out);
IDEALTOP_API void idealtop_descriptor_free(idealtop_descriptor* d);
IDEALTOP_API idealtop_status idealtop_descriptor_str(const idealtop_descriptor* d, char** out);

IDEALTOP_API idealtop_status idealtop_ideal_parse(const char* text, idealtop_ideal** out);
IDEALTOP_API void idealtop_ideal_free(idealtop_ideal* i);

/* --- operations ----------------------------------------------------------
 * Every operation fills a JSON document (schema_version, params echo,
 * result); verdict-valued operations also report the verdict directly.
 */

IDEALTOP_API idealtop_status idealtop_member(const idealtop_seq* u, const char* point,
                                             const idealtop_ideal* ideal,
                                             const idealtop_params* p,
                                             idealtop_verdict* verdict, char** json);

/* Membership for an element of a finite abelian product; coord_seqs holds one
 * sequence handle per coordinate. */
IDEALTOP_API idealtop_status idealtop_member_finite(const idealtop_seq* const* coord_seqs,
                                                    size_t ncoords, const char* element,
                                                    const idealtop_ideal* ideal,
                                                    const idealtop_params* p,
                                                    idealtop_verdict* verdict, char** json);

IDEALTOP_API idealtop_status idealtop_extract(const idealtop_seq* u, const char* point,
                                              const idealtop_params* p, char** json);

IDEALTOP_API idealtop_status idealtop_density(const idealtop_descriptor* d, char** json);

IDEALTOP_API idealtop_status idealtop_exh(const char* submeasure,
                                          const idealtop_descriptor* d,
                                          const idealtop_params* p,
                                          idealtop_verdict* verdict, char** json);

IDEALTOP_API idealtop_status idealtop_ideal_member(const idealtop_ideal* ideal,
                                                   const idealtop_descriptor* d,
                                                   idealtop_verdict* verdict, char** json);

/* found: 1 when a certificate was emitted, 0 for a horizon-relative
 * non-result. cert_json carries the certificate document itself. */
IDEALTOP_API idealtop_status idealtop_refute_t(const idealtop_seq* u, const idealtop_params* p,
                                               int* found, char** cert_json);

IDEALTOP_API idealtop_status idealtop_verify_cert(const idealtop_seq* u, const char* cert_json,
                                                  int* valid);

/* chain: descriptor grammar strings, ascending. */
IDEALTOP_API idealtop_status idealtop_nbhd(const idealtop_seq* u, const char* const* chain,
                                           size_t nchain, const idealtop_params* p,
                                           char** json);

/* m_out: minimal fold count, or -1 when not covered within the bounds. */
IDEALTOP_API idealtop_status idealtop_cover(const idealtop_seq* u, const char* g,
                                            const idealtop_descriptor* excluded,
                                            const idealtop_params* p, int64_t* m_out,
                                            char** json);

IDEALTOP_API idealtop_status idealtop_tb_scan(const idealtop_seq* u,
                                              const idealtop_ideal* ideal,
                                              const idealtop_params* p, int* evidence,
                                              char** json);

IDEALTOP_API idealtop_status idealtop_scan_finite(const char* orders,
                                                  const idealtop_seq* const* coord_seqs,
                                                  size_t ncoords, const idealtop_ideal* ideal,
                                                  const idealtop_params* p, char** json);

IDEALTOP_API idealtop_status idealtop_fsd(const idealtop_seq* u, const char* point,
                                          const char* submeasure, const idealtop_params* p,
                                          int* consistent, idealtop_verdict* direct,
                                          char** json);

#ifdef __cplusplus
}
#endif

#endif /* IDEALTOP_H */
