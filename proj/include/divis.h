/* divis - divisible linear codes over small fields: expansions, censuses,
 * minimum column multiplicities.  C API of the shared library. */
#ifndef DIVIS_H
#define DIVIS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* error codes */
#define DIVIS_OK 0
#define DIVIS_NEGATIVE 1 /* mathematically negative result (infeasible, claim failed, ...) */
#define DIVIS_EINVAL 2   /* bad arguments */
#define DIVIS_EBUDGET 3  /* node/time budget exhausted, result partial */
#define DIVIS_ERROR 4    /* internal error */

const char* divis_version(void);

/* Strings returned through char** outputs are heap-allocated; release them
 * with divis_free. */
void divis_free(char* p);

/* S_q(r)-adic expansion of n as JSON:
 * {"n":..,"q":..,"r":..,"digits":[..],"leading":..,"feasible":..} */
int divis_expand(int q, int r, long long n, char** json_out);

/* feasible_out = 1 iff a q^r-divisible multiset of cardinality n exists. */
int divis_feasible(int q, int r, long long n, int* feasible_out);

/* Gamma_q(Delta,n) by table (q=2, 2-power part of Delta <= 8).
 * value_out = 0 means infinite.  witness_out (optional) receives the witness
 * generator matrix in text format when the value is finite. */
int divis_gamma_lookup(int q, long long delta, long long n, long long* value_out, char** witness_out);

/* Check a matrix (text format) for Delta-divisibility; report JSON:
 * {"q":..,"k":..,"n":..,"effective_length":..,"divisible":..,"gamma1":..} */
int divis_check_matrix(const char* matrix_text, long long delta, char** report_json);

/* census engine with optional on-disk cache */
typedef struct divis_census divis_census_t;
divis_census_t* divis_census_create(const char* cache_dir, int threads);
void divis_census_destroy(divis_census_t* c);

/* Enumerate equivalence classes; counts_out receives
 * "n,k,count[,partial]" CSV for the single cell; reps_out (optional) the
 * representatives in matrix text format separated by blank lines. */
int divis_census_enumerate(divis_census_t* c, int q, long long delta, int n, int k, int gamma_cap,
                           uint64_t budget_nodes, double budget_seconds, char** counts_out, char** reps_out);

/* Gamma by exhaustive search.  JSON result plus optional witness text. */
int divis_census_gamma(divis_census_t* c, int q, long long delta, long long n, int max_gamma,
                       uint64_t budget_nodes, double budget_seconds, char** json_out, char** witness_out);

/* Verify one classification claim; verdict_out receives "pass", "fail:..."
 * or "budget".  Returns DIVIS_OK on pass, DIVIS_NEGATIVE on fail. */
int divis_verify_claim(divis_census_t* c, const char* claim_id, uint64_t budget_nodes, double budget_seconds,
                       char** verdict_out);

/* newline-separated list of known claim ids */
int divis_claim_list(char** ids_out);

/* Census table for a whole suite ("even", "doubly-even", "triply-even",
 * "sixteen", "ternary", "quaternary") as CSV with columns n,k,count. */
int divis_tables(divis_census_t* c, const char* suite, int max_n, uint64_t budget_nodes, double budget_seconds,
                 char** csv_out);

/* Combinatorial data rows (n,k,delta,gamma1,lambda1..3,spectrum) for all
 * classes of cardinality n, as CSV. */
int divis_stats(divis_census_t* c, int q, long long delta, int n, uint64_t budget_nodes, double budget_seconds,
                char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* DIVIS_H */
