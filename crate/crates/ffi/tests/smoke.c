#include <stdio.h>
#include "fraggroup.h"

int main(void) {
    FgSystem *sys = NULL;
    FgElement *g = NULL;
    uint64_t order = 0;
    if (fg_system_load("grigorchuk", &sys) != FG_STATUS_OK) return 1;
    if (fg_element_from_word(sys, "a b3", &g) != FG_STATUS_OK) return 2;
    if (fg_element_order(g, 64, &order) != FG_STATUS_OK) return 3;
    printf("order %llu\n", (unsigned long long)order);
    fg_element_free(g);
    fg_system_free(sys);
    return 0;
}
