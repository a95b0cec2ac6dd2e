# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel: fused model enumeration and formula evaluation.

Kept in lockstep with ``_kernel_py``: same opcodes, same class ids, same
enumeration order, same results.  The test suite cross-checks the two
backends, so any drift fails loudly.
"""

from libc.stdlib cimport free, malloc

cdef enum:
    OP_ATOM = 0
    OP_TOP = 1
    OP_BOT = 2
    OP_NOT = 3
    OP_AND = 4
    OP_OR = 5
    OP_IMP = 6
    OP_IFF = 7
    OP_BOX = 8
    OP_DIA = 9

cdef enum:
    CLASS_CONSTRAINED = 0
    CLASS_RAW = 1
    CLASS_KRIPKE_ALL = 2
    CLASS_KRIPKE_EQUIV = 3
    CLASS_UNIVERSAL = 4

# World counts stay tiny (caps are enforced by the caller), so fixed-size
# scratch arrays are plenty.
cdef enum:
    MAX_WORLDS = 10
    MAX_CANDS = 64
    MAX_STACK = 256


cdef unsigned long long _family_key(unsigned long long core, int n):
    cdef unsigned long long key = 0
    cdef unsigned long long x
    for x in range(<unsigned long long>1 << n):
        if (x & core) == core:
            key |= (<unsigned long long>1) << x
    return key


cdef unsigned long long _eval(long long* prog, int plen,
                              unsigned long long* vmasks,
                              unsigned long long full, int n, int class_id,
                              unsigned long long* struct_arr,
                              unsigned long long* stack):
    cdef int i = 0
    cdef int sp = 0
    cdef int w
    cdef long long op, arg
    cdef unsigned long long a, b, r
    while i < plen:
        op = prog[i]
        arg = prog[i + 1]
        i += 2
        if op == OP_ATOM:
            stack[sp] = vmasks[arg]
            sp += 1
        elif op == OP_TOP:
            stack[sp] = full
            sp += 1
        elif op == OP_BOT:
            stack[sp] = 0
            sp += 1
        elif op == OP_NOT:
            stack[sp - 1] ^= full
        elif op == OP_AND:
            sp -= 1
            stack[sp - 1] &= stack[sp]
        elif op == OP_OR:
            sp -= 1
            stack[sp - 1] |= stack[sp]
        elif op == OP_IMP:
            sp -= 1
            stack[sp - 1] = (stack[sp - 1] ^ full) | stack[sp]
        elif op == OP_IFF:
            sp -= 1
            stack[sp - 1] = (stack[sp - 1] ^ stack[sp]) ^ full
        elif op == OP_BOX:
            a = stack[sp - 1]
            r = 0
            if class_id == CLASS_CONSTRAINED:
                for w in range(n):
                    if struct_arr[w] & ~a == 0:
                        r |= (<unsigned long long>1) << w
            elif class_id == CLASS_RAW:
                for w in range(n):
                    if (struct_arr[w] >> a) & 1:
                        r |= (<unsigned long long>1) << w
            elif class_id == CLASS_KRIPKE_ALL or class_id == CLASS_KRIPKE_EQUIV:
                for w in range(n):
                    if struct_arr[w] & ~a == 0:
                        r |= (<unsigned long long>1) << w
            else:
                r = full if a == full else 0
            stack[sp - 1] = r
        else:  # OP_DIA
            a = stack[sp - 1]
            r = 0
            if class_id == CLASS_KRIPKE_ALL or class_id == CLASS_KRIPKE_EQUIV:
                for w in range(n):
                    if struct_arr[w] & a:
                        r |= (<unsigned long long>1) << w
            else:
                r = full if a != 0 else 0
            stack[sp - 1] = r
    return stack[sp - 1]


cdef bint _is_equivalence(unsigned long long* rows, int n):
    cdef int a, b
    cdef unsigned long long ra
    for a in range(n):
        if not (rows[a] >> a) & 1:
            return False
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            if (ra >> b) & 1 and rows[b] & ra != ra:
                return False
    return True


def run_search(int class_id, int max_worlds, int natoms, programs):
    """Mirror of ``_kernel_py.run_search``; see there for the contract."""
    cdef int nprogs = len(programs)
    cdef int total_len = 0
    cdef int pi, k
    for pi in range(nprogs):
        total_len += len(programs[pi])

    cdef long long* prog_buf = <long long*>malloc(total_len * sizeof(long long))
    cdef int* offsets = <int*>malloc((nprogs + 1) * sizeof(int))
    cdef unsigned long long* vmasks = <unsigned long long*>malloc(
        (natoms if natoms > 0 else 1) * sizeof(unsigned long long))
    cdef unsigned long long* struct_arr = <unsigned long long*>malloc(
        MAX_WORLDS * sizeof(unsigned long long))
    cdef unsigned long long* stack = <unsigned long long*>malloc(
        MAX_STACK * sizeof(unsigned long long))
    if not (prog_buf and offsets and vmasks and struct_arr and stack):
        free(prog_buf); free(offsets); free(vmasks); free(struct_arr); free(stack)
        raise MemoryError()

    cdef unsigned long long cands[MAX_WORLDS][MAX_CANDS]
    cdef int counts[MAX_WORLDS]
    cdef int idx[MAX_WORLDS]
    cdef unsigned long long keys[MAX_CANDS]

    cdef int n, w, j, ncand
    cdef long long checked = 0
    cdef unsigned long long full, structs_per_world, c, key
    cdef bint found = False, ok, carry, val_done
    cdef int world = -1, found_n = 0

    try:
        offsets[0] = 0
        k = 0
        for pi in range(nprogs):
            for item in programs[pi]:
                prog_buf[k] = item
                k += 1
            offsets[pi + 1] = k
        if max_worlds > MAX_WORLDS:
            raise ValueError("world bound exceeds the kernel limit")
        for pi in range(nprogs):
            if (offsets[pi + 1] - offsets[pi]) // 2 + 1 > MAX_STACK:
                raise ValueError("program exceeds the kernel stack")

        for n in range(1, max_worlds + 1):
            full = ((<unsigned long long>1) << n) - 1

            # Per-world structure candidates for this world count.
            if class_id == CLASS_CONSTRAINED:
                ncand = 0
                # candidates for world w: cores containing w, ordered by the
                # family bitmask they generate (insertion sort on the key)
                for w in range(n):
                    ncand = 0
                    for c in range(full + 1):
                        if (c >> w) & 1:
                            key = _family_key(c, n)
                            j = ncand
                            while j > 0 and keys[j - 1] > key:
                                keys[j] = keys[j - 1]
                                cands[w][j] = cands[w][j - 1]
                                j -= 1
                            keys[j] = key
                            cands[w][j] = c
                            ncand += 1
                    counts[w] = ncand
            elif class_id == CLASS_RAW:
                if (<unsigned long long>1 << n) >= 63:
                    raise ValueError("raw families exceed the kernel word size")
                structs_per_world = (<unsigned long long>1) << ((<unsigned long long>1) << n)
            elif class_id == CLASS_KRIPKE_ALL or class_id == CLASS_KRIPKE_EQUIV:
                structs_per_world = full + 1
            else:
                structs_per_world = 1

            # Odometer over per-world structures (world 0 most significant).
            for w in range(n):
                idx[w] = 0
                if class_id == CLASS_CONSTRAINED:
                    struct_arr[w] = cands[w][0]
                else:
                    struct_arr[w] = 0
            if class_id == CLASS_UNIVERSAL:
                # a single, empty structure
                pass

            while True:
                ok = True
                if class_id == CLASS_KRIPKE_EQUIV:
                    ok = _is_equivalence(struct_arr, n)
                if ok:
                    # Valuation odometer (first atom most significant).
                    for k in range(natoms):
                        vmasks[k] = 0
                    val_done = False
                    while not val_done:
                        checked += 1
                        ok = True
                        for pi in range(nprogs - 1):
                            if _eval(prog_buf + offsets[pi],
                                     offsets[pi + 1] - offsets[pi],
                                     vmasks, full, n, class_id, struct_arr,
                                     stack) != full:
                                ok = False
                                break
                        if ok:
                            key = _eval(prog_buf + offsets[nprogs - 1],
                                        offsets[nprogs] - offsets[nprogs - 1],
                                        vmasks, full, n, class_id, struct_arr,
                                        stack)
                            if key != full:
                                found = True
                                found_n = n
                                world = 0
                                while (key >> world) & 1:
                                    world += 1
                                break
                        # advance valuations
                        k = natoms - 1
                        while k >= 0:
                            vmasks[k] += 1
                            if vmasks[k] <= full:
                                break
                            vmasks[k] = 0
                            k -= 1
                        if k < 0:
                            val_done = True
                    if found:
                        break

                # advance structures
                if class_id == CLASS_UNIVERSAL:
                    break
                w = n - 1
                carry = True
                while w >= 0 and carry:
                    idx[w] += 1
                    if class_id == CLASS_CONSTRAINED:
                        if idx[w] < counts[w]:
                            struct_arr[w] = cands[w][idx[w]]
                            carry = False
                        else:
                            idx[w] = 0
                            struct_arr[w] = cands[w][0]
                            w -= 1
                    else:
                        if <unsigned long long>idx[w] < structs_per_world:
                            struct_arr[w] = idx[w]
                            carry = False
                        else:
                            idx[w] = 0
                            struct_arr[w] = 0
                            w -= 1
                if carry:
                    break
            if found:
                break

        if not found:
            return (False, checked, 0, (), (), -1)
        struct_list = []
        for w in range(found_n):
            struct_list.append(struct_arr[w])
        vmask_list = []
        for k in range(natoms):
            vmask_list.append(vmasks[k])
        return (True, checked, found_n, tuple(struct_list), tuple(vmask_list), world)
    finally:
        free(prog_buf)
        free(offsets)
        free(vmasks)
        free(struct_arr)
        free(stack)
