# cython: boundscheck=False, wraparound=False, cdivision=True
"""C lookup kernel: the same tape walk as pylookup, over flat int arrays.

Arcs are bucketed per state with the epsilon-match arcs first and the rest
sorted by match symbol, so a state's candidates for one input symbol are a
binary-searched slice.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

from fstmorph.kernels.pylookup import OutputLimitError


cdef class CMatcher:
    cdef int n_states
    cdef int start
    cdef int* off        # n_states + 1 slice offsets into the arc arrays
    cdef int* match
    cdef int* emit
    cdef int* tgt
    cdef char* final_mask
    cdef int n_arcs

    def __cinit__(self, int n_states, int start, finals, arcs):
        cdef list buckets = [[] for _ in range(n_states)]
        cdef int src
        for arc in arcs:
            buckets[arc[0]].append((arc[1], arc[2], arc[3]))
        cdef int total = 0
        for b in buckets:
            b.sort()
            total += len(b)

        self.n_states = n_states
        self.start = start
        self.n_arcs = total
        self.off = <int*> PyMem_Malloc((n_states + 1) * sizeof(int))
        self.match = <int*> PyMem_Malloc(max(total, 1) * sizeof(int))
        self.emit = <int*> PyMem_Malloc(max(total, 1) * sizeof(int))
        self.tgt = <int*> PyMem_Malloc(max(total, 1) * sizeof(int))
        self.final_mask = <char*> PyMem_Malloc(max(n_states, 1) * sizeof(char))
        if not (self.off and self.match and self.emit and self.tgt and self.final_mask):
            raise MemoryError()

        cdef int pos = 0
        for src in range(n_states):
            self.off[src] = pos
            for m, e, t in buckets[src]:
                self.match[pos] = m
                self.emit[pos] = e
                self.tgt[pos] = t
                pos += 1
        self.off[n_states] = pos

        cdef int s
        for s in range(n_states):
            self.final_mask[s] = 0
        for s in finals:
            self.final_mask[s] = 1

    def __dealloc__(self):
        PyMem_Free(self.off)
        PyMem_Free(self.match)
        PyMem_Free(self.emit)
        PyMem_Free(self.tgt)
        PyMem_Free(self.final_mask)

    def lookup(self, ids, int max_out=64):
        cdef int n = len(ids)
        cdef int* input_ids = <int*> PyMem_Malloc(max(n, 1) * sizeof(int))
        cdef int* out = <int*> PyMem_Malloc(max(max_out, 1) * sizeof(int))
        if not (input_ids and out):
            PyMem_Free(input_ids)
            PyMem_Free(out)
            raise MemoryError()
        cdef int i
        for i in range(n):
            input_ids[i] = ids[i]
        cdef set results = set()
        cdef set on_path = set()
        try:
            self._walk(self.start, 0, 0, n, input_ids, out, max_out, results, on_path)
        finally:
            PyMem_Free(input_ids)
            PyMem_Free(out)
        return sorted(results)

    cdef _walk(self, int state, int pos, int out_len, int n, int* input_ids,
               int* out, int max_out, set results, set on_path):
        cdef object key = (state, pos, out_len)
        if key in on_path:
            return
        on_path.add(key)

        cdef int i
        if pos == n and self.final_mask[state]:
            results.add(tuple([out[i] for i in range(out_len)]))

        cdef int lo = self.off[state]
        cdef int hi = self.off[state + 1]
        cdef int a = lo
        # epsilon-match arcs sit at the front of the slice
        while a < hi and self.match[a] == 0:
            if self.emit[a]:
                if out_len >= max_out:
                    raise OutputLimitError(f"output exceeds {max_out} symbols")
                out[out_len] = self.emit[a]
                self._walk(self.tgt[a], pos, out_len + 1, n, input_ids, out,
                           max_out, results, on_path)
            else:
                self._walk(self.tgt[a], pos, out_len, n, input_ids, out,
                           max_out, results, on_path)
            a += 1

        cdef int sym, mid
        if pos < n:
            sym = input_ids[pos]
            # binary search for the first arc matching sym
            lo = a
            while lo < hi:
                mid = (lo + hi) // 2
                if self.match[mid] < sym:
                    lo = mid + 1
                else:
                    hi = mid
            a = lo
            hi = self.off[state + 1]
            while a < hi and self.match[a] == sym:
                if self.emit[a]:
                    if out_len >= max_out:
                        raise OutputLimitError(f"output exceeds {max_out} symbols")
                    out[out_len] = self.emit[a]
                    self._walk(self.tgt[a], pos + 1, out_len + 1, n, input_ids,
                               out, max_out, results, on_path)
                else:
                    self._walk(self.tgt[a], pos + 1, out_len, n, input_ids,
                               out, max_out, results, on_path)
                a += 1

        on_path.discard(key)
