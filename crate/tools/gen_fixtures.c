/*
 * Emits canonical graph6 strings for every extension of the graphs read on
 * stdin (order n-1) by one new vertex; pipe through `sort -u` to obtain all
 * graphs of order n up to isomorphism.  Builds against nauty 2.9:
 *
 *   cc -O2 -DMAXN=WORDSIZE -I$NAUTY gen_fixtures.c $NAUTY/{nauty,nautil,naugraph,schreier,naurng,gtools}.c
 *   echo '@' | ./a.out | sort -u > n1.g6 ...
 */
#include "gtools.h"

int main(void) {
    char line[256];
    graph g[MAXN * MAXM], canon[MAXN * MAXM];
    int lab[MAXN], ptn[MAXN], orbits[MAXN];
    DEFAULTOPTIONS_GRAPH(options);
    statsblk stats;
    options.getcanon = TRUE;
    while (fgets(line, sizeof line, stdin)) {
        line[strcspn(line, "\r\n")] = 0;
        int old = graphsize(line);
        int n = old + 1, m = SETWORDSNEEDED(n);
        graph base[MAXN * MAXM];
        EMPTYGRAPH(base, m, n);
        if (old > 0) stringtograph(line, base, m);
        for (unsigned long mask = 0; mask < (1UL << old); ++mask) {
            memcpy(g, base, sizeof(graph) * m * n);
            for (int v = 0; v < old; ++v)
                if (mask >> v & 1) ADDONEEDGE(g, v, old, m);
            densenauty(g, lab, ptn, orbits, &options, &stats, m, n, canon);
            fputs(ntog6(canon, m, n), stdout);
        }
    }
    return 0;
}
