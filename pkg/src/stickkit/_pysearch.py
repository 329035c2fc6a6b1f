"""Pure-Python depth-first search over vertex orders.

Mirrors ``_csearch.pyx`` exactly, including the order in which candidates
are tried, so both backends return identical witnesses.

Placing ``v`` at position ``p`` is accepted iff every non-neighbour ``u``
placed in ``[back(v), p)`` already has all of its neighbours placed (stick
model: only B-vertices ``u`` matter, A-vertices wait for all neighbours).
An open ``u`` would get a forward reach beyond ``p`` later and cross ``v``;
a closed ``u`` never reaches ``p``.  Hence a full order passes every step iff
its extremal reaches are feasible.

The same rule gives, for every unplaced vertex, a set of unplaced vertices
that must be placed before it.  A node whose precedence relation has a cycle
has no feasible completion and is cut.
"""

KIND_ANY = 0
KIND_A = 1
KIND_B = 2

COMPLETE = 0
STOPPED = 1
EXHAUSTED = 2


def _bits(m):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def dfs(n, adj, kinds, stick, prefix, budget, visit):
    """Enumerate feasible orders extending ``prefix``.

    ``visit(order)`` is called for every feasible full order and may return
    True to stop.  Returns ``(status, nodes, prunes)``.
    """
    pos = [-1] * n
    order = []
    cum = [0]  # cum[i] = mask of the first i placed vertices
    missing = [bin(adj[v]).count("1") for v in range(n)]
    bmask = 0
    amask = 0
    for v in range(n):
        if kinds[v] == KIND_B:
            bmask |= 1 << v
        elif kinds[v] == KIND_A:
            amask |= 1 << v
    # vertices whose placement is constrained by open vertices
    constrained = amask if stick else (1 << n) - 1
    blockers = bmask if stick else (1 << n) - 1
    full = (1 << n) - 1
    state = {"placed": 0, "open": 0, "nodes": 0, "prunes": 0}

    def back_pos(v, placed):
        lo = len(order)
        for w in _bits(adj[v] & placed):
            if pos[w] < lo:
                lo = pos[w]
        return lo

    def try_place(v):
        placed = state["placed"]
        nb = adj[v]
        p = len(order)
        if stick and kinds[v] == KIND_A and nb & ~placed:
            return False
        if constrained >> v & 1:
            lo = back_pos(v, placed)
            if (cum[p] & ~cum[lo]) & ~nb & state["open"] & blockers:
                return False
        pos[v] = p
        order.append(v)
        cum.append(cum[p] | 1 << v)
        state["placed"] = placed | 1 << v
        op = state["open"]
        for w in _bits(nb):
            missing[w] -= 1
            if missing[w] == 0 and pos[w] >= 0:
                op &= ~(1 << w)
        if missing[v]:
            op |= 1 << v
        state["open"] = op
        return True

    def undo(v, saved_open):
        order.pop()
        cum.pop()
        pos[v] = -1
        state["placed"] &= ~(1 << v)
        for w in _bits(adj[v]):
            missing[w] += 1
        state["open"] = saved_open

    def deadlocked():
        placed = state["placed"]
        free = full & ~placed
        p = len(order)
        opened = state["open"] & blockers
        must = {}
        for a in _bits(free & constrained):
            req = adj[a] & free if stick else 0
            nb_placed = adj[a] & placed
            if nb_placed:
                lo = back_pos(a, placed)
                for u in _bits((cum[p] & ~cum[lo]) & ~adj[a] & opened):
                    req |= adj[u] & free
            if req:
                must[a] = req
        remaining = free
        while remaining:
            ready = 0
            for a in _bits(remaining):
                if not must.get(a, 0) & remaining:
                    ready |= 1 << a
            if not ready:
                return True
            remaining &= ~ready
        return False

    for v in prefix:
        if not try_place(v):
            return COMPLETE, state["nodes"], state["prunes"] + 1

    def candidates():
        placed = state["placed"]
        cands = []
        for v in range(n):
            if not placed >> v & 1:
                cands.append((-bin(adj[v] & placed).count("1"), v))
        cands.sort()
        return [v for _, v in cands]

    def rec():
        if len(order) == n:
            return STOPPED if visit(list(order)) else COMPLETE
        for v in candidates():
            saved = state["open"]
            if not try_place(v):
                state["prunes"] += 1
                continue
            if deadlocked():
                undo(v, saved)
                state["prunes"] += 1
                continue
            state["nodes"] += 1
            if state["nodes"] > budget:
                undo(v, saved)
                return EXHAUSTED
            r = rec()
            undo(v, saved)
            if r != COMPLETE:
                return r
        return COMPLETE

    status = rec()
    return status, state["nodes"], state["prunes"]
