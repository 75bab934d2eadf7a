/* The header must compile as C. */
#include <stdio.h>

#include "bwcc/bwcc.h"

int main(void) {
  bwcc_cc* cc = NULL;
  bwcc_report* rep = NULL;
  int verdict;
  if (bwcc_cc_known(BWCC_KNOWN_EQUILATERAL, 1.0, &cc) != BWCC_OK) return 1;
  if (bwcc_verify(cc, &rep) != BWCC_OK) return 1;
  verdict = bwcc_report_verdict(rep);
  printf("equilateral verdict %d\n", verdict);
  bwcc_report_free(rep);
  bwcc_cc_free(cc);
  return verdict == 1 ? 0 : 1;
}
