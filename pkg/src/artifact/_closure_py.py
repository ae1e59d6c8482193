"""Pure-Python forward-chaining kernel over literal bitmasks.

Each rule is a pair (head bit, body mask). The closure of a seed mask is
the least superset closed under every rule whose body is already covered.
"""


def closure(heads, bodies, seed, width=0):
    mask = seed
    pending = range(len(heads))
    while True:
        rest = []
        for i in pending:
            body = bodies[i]
            if body & mask == body:
                mask |= 1 << heads[i]
            else:
                rest.append(i)
        if len(rest) == len(pending):
            return mask
        pending = rest


def closure_many(heads, bodies, seeds, selections, width=0):
    """Closure of each rule subset; selections[k] lists rule indices for seeds[k]."""
    out = []
    for seed, chosen in zip(seeds, selections):
        out.append(closure([heads[i] for i in chosen], [bodies[i] for i in chosen], seed))
    return out
