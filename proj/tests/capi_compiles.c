/* Compiled as C11 to prove the header needs no C++ to consume. */
#include <stdio.h>
#include <string.h>

#include "efg/efg.h"

int main(void) {
  efg_builder* b = efg_builder_new();
  if (b == NULL) {
    return 1;
  }
  if (efg_builder_add_vertex(b, "A", 1.0) != EFG_OK ||
      efg_builder_add_vertex(b, "T", 0.0) != EFG_OK ||
      efg_builder_add_edge_p(b, "A", "T", 0.5, 1.0) != EFG_OK ||
      efg_builder_set_entry(b, "A") != EFG_OK ||
      efg_builder_add_terminal(b, "T") != EFG_OK) {
    fprintf(stderr, "builder failed: %s\n", efg_last_error());
    return 1;
  }
  efg_graph* g = NULL;
  if (efg_builder_build(b, &g) != EFG_OK) {
    fprintf(stderr, "build failed: %s\n", efg_last_error());
    return 1;
  }
  efg_builder_free(b);

  if (!efg_graph_is_valid(g)) {
    fprintf(stderr, "expected a valid graph\n");
    return 1;
  }
  double energy = 0.0;
  if (efg_path_energy(g, "A>T", &energy) != EFG_OK || energy != 1.5) {
    fprintf(stderr, "path energy mismatch\n");
    return 1;
  }
  if (efg_graph_parse(NULL, NULL) != EFG_ERR_INVALID_ARGUMENT) {
    fprintf(stderr, "null handling mismatch\n");
    return 1;
  }
  if (strcmp(efg_status_name(EFG_ERR_PARSE), "parse") != 0) {
    fprintf(stderr, "status name mismatch\n");
    return 1;
  }
  efg_graph_free(g);
  printf("ok\n");
  return 0;
}
