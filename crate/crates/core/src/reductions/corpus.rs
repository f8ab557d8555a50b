//! Tiny 3-CNF formulas over three variables with at most three clauses.
//! Unsatisfiable ones this small must repeat literals within a clause.

pub const TINY_SAT: [&str; 10] = [
    "p cnf 3 1\n1 2 3 0\n",
    "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n",
    "p cnf 3 3\n1 1 1 0\n2 2 2 0\n3 3 3 0\n",
    "p cnf 3 3\n-1 -1 -1 0\n-2 -2 -2 0\n-3 -3 -3 0\n",
    "p cnf 3 3\n1 -2 3 0\n-1 2 -3 0\n1 2 -3 0\n",
    "p cnf 3 3\n1 1 2 0\n-1 -1 2 0\n2 3 3 0\n",
    "p cnf 3 3\n1 1 1 0\n-1 -1 2 0\n-2 -2 3 0\n",
    "p cnf 3 3\n1 -1 2 0\n-2 -2 3 0\n-3 -1 -1 0\n",
    "p cnf 3 3\n1 2 2 0\n-1 3 3 0\n-2 -3 -3 0\n",
    "p cnf 3 3\n-1 -2 -3 0\n1 1 -2 0\n2 3 3 0\n",
];

pub const TINY_UNSAT: [&str; 10] = [
    "p cnf 3 2\n1 1 1 0\n-1 -1 -1 0\n",
    "p cnf 3 2\n2 2 2 0\n-2 -2 -2 0\n",
    "p cnf 3 2\n3 3 3 0\n-3 -3 -3 0\n",
    "p cnf 3 3\n1 1 2 0\n1 1 -2 0\n-1 -1 -1 0\n",
    "p cnf 3 3\n1 2 2 0\n1 -2 -2 0\n-1 -1 -1 0\n",
    "p cnf 3 3\n2 2 3 0\n2 2 -3 0\n-2 -2 -2 0\n",
    "p cnf 3 3\n1 1 3 0\n-1 -1 3 0\n-3 -3 -3 0\n",
    "p cnf 3 3\n1 1 1 0\n-1 -1 2 0\n-2 -2 -2 0\n",
    "p cnf 3 3\n3 3 3 0\n-3 -3 -1 0\n1 1 1 0\n",
    "p cnf 3 3\n2 2 -3 0\n-2 -2 -3 0\n3 3 3 0\n",
];
