/* SPDX-License-Identifier: Apache-2.0 */

/*
 * C interface to the disclosure-control toolkit.
 *
 * Objects are opaque handles released with their *_free function. Every
 * fallible call returns an sdc_status; on failure sdc_last_error() holds a
 * message for the calling thread until its next failing call. Strings
 * returned through char** are owned by the caller and released with
 * sdc_string_free().
 */

#ifndef SDC_SDC_H_
#define SDC_SDC_H_

#include <stddef.h>

#if defined(_WIN32)
#define SDC_API __declspec(dllexport)
#else
#define SDC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sdc_status {
  SDC_OK = 0,
  SDC_E_USAGE = 1,        /* bad argument, unknown name, value out of range */
  SDC_E_DATA = 2,         /* unparsable or invalid input data/document */
  SDC_E_PRECONDITION = 3, /* operator refused well-formed input */
  SDC_E_UNDEFINED = 4,    /* metric undefined for the input */
  SDC_E_NOT_FOUND = 5,
  SDC_E_CONFLICT = 6,
  SDC_E_INTERNAL = 7
} sdc_status;

typedef struct sdc_dataset sdc_dataset;
typedef struct sdc_result sdc_result;
typedef struct sdc_server sdc_server;

typedef struct sdc_risk_summary {
  double xi;
  double max_risk;
  size_t unsafe_count;
  size_t record_count;
} sdc_risk_summary;

typedef struct sdc_anonymize_options {
  const char* qids;           /* "zc+gender+yob[,...]" */
  size_t k;
  const char* plan_json;      /* recode plan document; NULL or "" for none */
  const char* plan_base_dir;  /* resolves relative "hierarchy" paths */
  const char* hierarchies;    /* "var=path,..." fallback per variable; may be NULL */
  const char* finisher;       /* "suppress" or "delete" */
  const char* importance;     /* "var=w,..."; may be NULL */
} sdc_anonymize_options;

SDC_API const char* sdc_version(void);
SDC_API const char* sdc_last_error(void);
SDC_API void sdc_string_free(char* s);

/* Datasets */
SDC_API sdc_status sdc_dataset_load(const char* csv_text, const char* schema_json,
                                    sdc_dataset** out);
SDC_API sdc_status sdc_dataset_load_files(const char* csv_path, const char* schema_path,
                                          sdc_dataset** out);
SDC_API void sdc_dataset_free(sdc_dataset* ds);
SDC_API size_t sdc_dataset_record_count(const sdc_dataset* ds);
SDC_API sdc_status sdc_dataset_to_csv(const sdc_dataset* ds, int with_record_ids, char** out);
SDC_API sdc_status sdc_dataset_schema_json(const sdc_dataset* ds, char** out);
SDC_API sdc_status sdc_dataset_truncate_date(const sdc_dataset* ds, const char* variable,
                                             sdc_dataset** out);
SDC_API sdc_status sdc_generate(const char* spec_json, sdc_dataset** out);

/* Analysis */
SDC_API sdc_status sdc_risk(const sdc_dataset* ds, const char* qid, size_t k,
                            sdc_risk_summary* out);
SDC_API sdc_status sdc_is_k_anonymous(const sdc_dataset* ds, const char* qid, size_t k,
                                      int* out);
/* format: "text", "csv" or "json" */
SDC_API sdc_status sdc_analyze(const sdc_dataset* ds, const char* qids, const char* format,
                               char** out);
SDC_API sdc_status sdc_compare(const sdc_dataset* original, size_t count,
                               const char* const* labels,
                               const sdc_dataset* const* published, const char* eval_qids,
                               const char* loss_qids, const char* format, char** out);

/* Anonymization */
SDC_API sdc_status sdc_anonymize(const sdc_dataset* ds, const sdc_anonymize_options* options,
                                 sdc_result** out);
SDC_API void sdc_result_free(sdc_result* result);
SDC_API sdc_status sdc_result_published(const sdc_result* result, sdc_dataset** out);
SDC_API sdc_status sdc_result_log_json(const sdc_result* result, char** out);
SDC_API sdc_status sdc_result_summary_json(const sdc_result* result, char** out);
SDC_API sdc_status sdc_result_steps_text(const sdc_result* result, char** out);
SDC_API sdc_status sdc_replay(const sdc_dataset* original, const char* log_json,
                              sdc_dataset** out);

/* HTTP service */
SDC_API sdc_status sdc_server_create(const char* data_dir, sdc_server** out);
/* port 0 binds any free port; the bound port is written to *bound_port. */
SDC_API sdc_status sdc_server_bind(sdc_server* server, const char* host, int port,
                                   int* bound_port);
/* Blocks until sdc_server_stop() from another thread. */
SDC_API sdc_status sdc_server_listen(sdc_server* server);
SDC_API void sdc_server_stop(sdc_server* server);
SDC_API void sdc_server_free(sdc_server* server);

#ifdef __cplusplus
}
#endif

#endif /* SDC_SDC_H_ */
