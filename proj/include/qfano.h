#ifndef QFANO_H
#define QFANO_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(QFANO_BUILDING_LIBRARY)
#define QF_API __attribute__((visibility("default")))
#else
#define QF_API
#endif

/* All functions returning int return QF_OK or a negative status; details via qf_last_error(). */
enum {
    QF_OK = 0,
    QF_ERR_INVALID_INPUT = -1,
    QF_ERR_NOT_INVERTIBLE = -2,
    QF_ERR_NO_SOLUTION = -3,
    QF_ERR_INCONSISTENT_TORSION = -4,
    QF_ERR_UNSUPPORTED_INDEX = -5,
    QF_ERR_VANISHING_NOT_APPLICABLE = -6,
    QF_ERR_NO_ORDER = -7,
    QF_ERR_MALFORMED_EQUATION = -8,
    QF_ERR_NO_BOUND = -9,
    QF_ERR_UNKNOWN_AXIOM = -10,
    QF_ERR_UNKNOWN_TABLE = -11,
    QF_ERR_MISSING_DATA = -12,
    QF_ERR_REJECTED = -13,
    QF_ERR_NULL_ARGUMENT = -14,
    QF_ERR_UNKNOWN_KEY = -15,
    QF_ERR_OUT_OF_RANGE = -16,
    QF_ERR_INTERNAL = -99
};

typedef struct qf_config qf_config;
typedef struct qf_records qf_records;
typedef struct qf_candidate qf_candidate;
typedef struct qf_report qf_report;
typedef struct qf_link qf_link;

QF_API const char* qf_version(void);
QF_API const char* qf_status_name(int status);
/* Message of the last failed call on this thread; "" if none. */
QF_API const char* qf_last_error(void);
QF_API void qf_free_string(char* s);

QF_API int qf_set_data_dir(const char* dir);
QF_API int qf_sha256_hex(const char* data, size_t len, char out[65]);

/* search configuration; keys: q, mode, max_index, genus_min, genus_max, genus_threshold,
   dims_filter, workers, long_running, profile (nonrational|none) */
QF_API int qf_config_new(qf_config** out);
QF_API int qf_config_set(qf_config* cfg, const char* key, const char* value);
QF_API void qf_config_free(qf_config* cfg);

QF_API int qf_enumerate(const qf_config* cfg, qf_records** out);
QF_API size_t qf_records_count(const qf_records* recs);
QF_API int qf_records_json(const qf_records* recs, char** out);
QF_API int qf_records_csv(const qf_records* recs, char** out);
QF_API int qf_records_from_json(const char* text, qf_records** out);
QF_API int qf_records_from_csv(const char* text, qf_records** out);
/* 1 if both sets hold the same records, 0 otherwise */
QF_API int qf_records_equal(const qf_records* a, const qf_records* b);
QF_API void qf_records_free(qf_records* recs);

/* basket "r[:b],..."; torsion "k1,k2,..." in basket order or NULL.
   QF_ERR_REJECTED names the failing filter. */
QF_API int qf_candidate_new(long q, const char* basket, const char* torsion, qf_candidate** out);
QF_API int qf_candidate_basket(const qf_candidate* c, char** out);
QF_API int qf_candidate_a3(const qf_candidate* c, char** out);
QF_API int qf_candidate_genus(const qf_candidate* c, long* out);
QF_API int qf_candidate_order(const qf_candidate* c, long* out);
QF_API int qf_candidate_dim(const qf_candidate* c, long t, long s, long* out);
QF_API void qf_candidate_free(qf_candidate* c);

/* newline separated */
QF_API int qf_table_ids(char** out);
QF_API int qf_verify_table(const char* id, unsigned workers, qf_report** out);
QF_API int qf_verify_cases(const char* pattern, qf_report** out);
QF_API size_t qf_report_count(const qf_report* r);
QF_API size_t qf_report_passed(const qf_report* r);
/* label and detail stay valid until qf_report_free */
QF_API int qf_report_item(const qf_report* r, size_t i, const char** label, int* pass, const char** detail);
QF_API int qf_report_json(const qf_report* r, char** out);
QF_API void qf_report_free(qf_report* r);

/* case-file text; 'expect' is optional here */
QF_API int qf_link_solve_spec(const char* text, const char* origin, qf_link** out);
/* ks "5" or "5,6"; alpha NULL for 1/r; bounds "q_hat=1..19 e=1..4 s=0..3 m=0..2" or NULL */
QF_API int qf_link_solve_inline(long q, const char* ks, long r, const char* alpha, const char* bounds,
                                qf_link** out);
QF_API const char* qf_link_outcome(const qf_link* l);
/* distinct solutions projected on the reported fields */
QF_API size_t qf_link_count(const qf_link* l);
QF_API const char* qf_link_solution(const qf_link* l, size_t i);
/* full assignments (q_hat, e, alpha, s_k, m_k) */
QF_API size_t qf_link_detail_count(const qf_link* l);
QF_API const char* qf_link_detail(const qf_link* l, size_t i);
QF_API size_t qf_link_note_count(const qf_link* l);
QF_API const char* qf_link_note(const qf_link* l, size_t i);
/* has_expect 0 when the spec states no outcome; then pass is 1 */
QF_API int qf_link_check(const qf_link* l, int* has_expect, int* pass, const char** expected);
QF_API void qf_link_free(qf_link* l);

#ifdef __cplusplus
}
#endif

#endif
