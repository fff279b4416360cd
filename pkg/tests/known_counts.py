"""Published enumeration data used as fixtures."""

# satisfiable 2-CNF on n variables: row totals and counts by clause number m
SAT_TOTALS = {
    1: 1,
    2: 15,
    3: 2397,
    4: 3049713,
    5: 28694311447,
    6: 2034602766692687,
    7: 1115068294703296663717,
}

SAT_BY_CLAUSES = {
    1: [1, 0, 0, 0, 0, 0],
    2: [1, 4, 6, 4, 0, 0],
    3: [1, 12, 66, 220, 486, 684, 572, 276, 72, 8, 0, 0, 0],
    4: [1, 24, 276, 2024, 10596, 41616, 123528, 275568, 463680, 596232, 593928,
        462408, 281896],
    5: [1, 40, 780, 9880, 91320, 654408, 3752600, 17428040, 65774970, 202646120,
        514203264, 1087043720, 1937000920],
    6: [1, 60, 1770, 34220, 487500, 5451072, 49675760, 377136960, 2411974740,
        13063104000, 60169952412, 237115483560, 805717285720],
    7: [1, 84, 3486, 95284, 1929270, 30847236, 405181084, 4485339276, 42527890314,
        348648091120, 2484665216376, 15453747532944, 84253905879486],
}

# contradictory strongly connected 2-CNF: totals and counts by excess k = m - n
CSCC_TOTALS = {
    2: 1,
    3: 1606,
    4: 12864042,
    5: 1035697286504,
    6: 1137724245192445576,
    7: 19275699325699284398997808,
}

CSCC_BY_EXCESS = {
    2: [0, 1, 0, 0, 0, 0],
    3: [6, 84, 316, 492, 417, 212],
    4: [144, 4104, 38880, 186864, 559496, 1175064],
    5: [2880, 152160, 2779350, 26769440, 165382784, 733763440],
    6: [57600, 5097600, 157060200, 2572386420, 27182781120, 207149446560],
    7: [1209600, 166199040, 7932622320, 201117551040, 3285880363290, 38654632189488],
}

# strongly connected labelled digraphs on k vertices
SCC_TOTALS = {1: 1, 2: 1, 3: 18, 4: 1606}

# limiting probability at the centre of the window and the first correction
P_INF_CENTER = 0.90622396067
C1_CENTER = 0.212314432
