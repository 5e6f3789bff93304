"""Sorting and merging on indexable arrays with O(1) extra words.

Everything works on any object supporting ``a[k]`` and ``a[k] = v``, so
the packed position arrays are sorted where they lie.
"""


def _sift_down_cmp(a, lo, root, end, cmp):
    # bottom-up variant: walk to a leaf along larger children, then climb
    j = root
    while 2 * j + 2 < end:
        left = 2 * j + 1
        j = left + 1 if cmp(a[lo + left + 1], a[lo + left]) > 0 else left
    if 2 * j + 1 < end:
        j = 2 * j + 1
    v = a[lo + root]
    while cmp(v, a[lo + j]) > 0:
        j = (j - 1) >> 1
    x = a[lo + j]
    a[lo + j] = v
    while j > root:
        j = (j - 1) >> 1
        x, a[lo + j] = a[lo + j], x


def heapsort(a, lo, hi, cmp):
    """Sort a[lo:hi] ascending under the three-way comparison cmp."""
    size = hi - lo
    for root in range(size // 2 - 1, -1, -1):
        _sift_down_cmp(a, lo, root, size, cmp)
    for end in range(size - 1, 0, -1):
        a[lo], a[lo + end] = a[lo + end], a[lo]
        _sift_down_cmp(a, lo, 0, end, cmp)


def _sift_down_key(a, lo, root, end, key):
    v = a[lo + root]
    kv = key(v)
    while True:
        child = 2 * root + 1
        if child >= end:
            break
        c = a[lo + child]
        kc = key(c)
        if child + 1 < end:
            c2 = a[lo + child + 1]
            kc2 = key(c2)
            if kc2 > kc:
                child, c, kc = child + 1, c2, kc2
        if kc <= kv:
            break
        a[lo + root] = c
        root = child
    a[lo + root] = v


def heapsort_by_key(a, lo, hi, key):
    """Sort a[lo:hi] by key(entry); keys are recomputed, never stored."""
    size = hi - lo
    for root in range(size // 2 - 1, -1, -1):
        _sift_down_key(a, lo, root, size, key)
    for end in range(size - 1, 0, -1):
        a[lo], a[lo + end] = a[lo + end], a[lo]
        _sift_down_key(a, lo, 0, end, key)


def _reverse(a, lo, hi):
    hi -= 1
    while lo < hi:
        a[lo], a[hi] = a[hi], a[lo]
        lo += 1
        hi -= 1


def rotate(a, lo, mid, hi):
    """Exchange the blocks a[lo:mid] and a[mid:hi]."""
    _reverse(a, lo, mid)
    _reverse(a, mid, hi)
    _reverse(a, lo, hi)


def merge_in_place(a, lo, mid, hi, cmp):
    """Stable merge of sorted runs a[lo:mid] and a[mid:hi] (SymMerge, rotation based)."""
    if lo >= mid or mid >= hi:
        return
    if mid - lo == 1:
        # first element of the right run not smaller than a[lo]
        i, j = mid, hi
        x = a[lo]
        while i < j:
            h = (i + j) >> 1
            if cmp(a[h], x) < 0:
                i = h + 1
            else:
                j = h
        rotate(a, lo, mid, i)
        return
    if hi - mid == 1:
        # first element of the left run greater than a[mid]
        i, j = lo, mid
        x = a[mid]
        while i < j:
            h = (i + j) >> 1
            if cmp(x, a[h]) >= 0:
                i = h + 1
            else:
                j = h
        rotate(a, i, mid, hi)
        return
    m = (lo + hi) >> 1
    n = m + mid
    if mid > m:
        start, r = n - hi, m
    else:
        start, r = lo, mid
    p = n - 1
    while start < r:
        c = (start + r) >> 1
        if cmp(a[p - c], a[c]) >= 0:
            start = c + 1
        else:
            r = c
    end = n - start
    if start < mid < end:
        rotate(a, start, mid, end)
    if lo < start < m:
        merge_in_place(a, lo, start, m, cmp)
    if m < end < hi:
        merge_in_place(a, m, end, hi, cmp)
