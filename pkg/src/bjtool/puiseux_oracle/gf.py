"""Finite fields F_p[theta]/(P) with numpy-vectorized arithmetic, polynomials
and truncated power series over them, and small linear algebra mod p.

Elements are int64 arrays of length m; a polynomial in U over the field is a
2-D array of shape (length, m); a polynomial in z is a list of elements."""
from __future__ import annotations

import random

import numpy as np

from ..errors import Unsupported

_MAX_P = 1 << 24


class GF:
    def __init__(self, p: int, modulus):
        if p >= _MAX_P:
            raise Unsupported(f"oracle arithmetic supports p < {_MAX_P}")
        modulus = [int(c) % p for c in modulus]
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.p = p
        self.m = len(modulus) - 1
        self.modulus = modulus
        self.order = p**self.m
        m = self.m
        R = np.zeros((max(2 * m - 1, 1), m), dtype=np.int64)
        cur = np.zeros(m, dtype=np.int64)
        cur[0] = 1
        for k in range(2 * m - 1):
            R[k] = cur
            # multiply cur by theta
            top = cur[-1]
            cur = np.roll(cur, 1)
            cur[0] = 0
            if top:
                cur = (cur - top * np.array(modulus[:m], dtype=np.int64)) % p
        self.R = R
        self._frob = None

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    # elements
    def zero(self):
        return np.zeros(self.m, dtype=np.int64)

    def one(self):
        e = self.zero()
        e[0] = 1
        return e

    def const(self, c: int):
        e = self.zero()
        e[0] = int(c) % self.p
        return e

    def theta(self):
        if self.m == 1:
            return self.const(-self.modulus[0])
        e = self.zero()
        e[1] = 1
        return e

    def from_coeffs(self, coeffs):
        e = self.zero()
        for i, c in enumerate(coeffs):
            if i < self.m:
                e[i] = int(c) % self.p
        return e

    def is_zero(self, a) -> bool:
        return not a.any()

    def eq(self, a, b) -> bool:
        return bool(np.array_equal(a, b))

    def key(self, a) -> tuple:
        return tuple(int(c) for c in a)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def reduce(self, X):
        """Reduce arrays whose last axis holds theta-degrees < 2m-1."""
        return (X % self.p) @ self.R[: X.shape[-1]] % self.p

    def mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        return self.reduce(np.convolve(a, b))

    def smul(self, c: int, a):
        return (a * (int(c) % self.p)) % self.p

    def pow(self, a, k: int):
        out = self.one()
        base = a
        if k < 0:
            base = self.inv(a)
            k = -k
        while k:
            if k & 1:
                out = self.mul(out, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return out

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.m == 1:
            return np.array([pow(int(a[0]), -1, self.p)], dtype=np.int64)
        # extended Euclid over F_p on coefficient lists
        p = self.p
        r0, r1 = list(self.modulus), _strip([int(c) for c in a])
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        if len(r1) != 1:
            raise ArithmeticError("modulus is not irreducible")
        c = pow(r1[0], -1, p)
        return self.from_coeffs([x * c for x in s1])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def mul_matrix(self, c):
        """Matrix M with v @ M = v * c for row vectors v."""
        m = self.m
        T = np.zeros((m, max(2 * m - 1, 1)), dtype=np.int64)
        for i in range(m):
            T[i, i : i + m] = c
        return T @ self.R[: T.shape[1]] % self.p

    def frobenius_matrix(self):
        """Matrix of a -> a^p acting on row vectors."""
        if self._frob is None:
            tp = self.pow(self.theta() if self.m > 1 else self.one(), self.p)
            M = np.zeros((self.m, self.m), dtype=np.int64)
            cur = self.one()
            for i in range(self.m):
                M[i] = cur
                cur = self.mul(cur, tp)
            self._frob = M
        return self._frob

    def random(self, rng: random.Random):
        return self.from_coeffs([rng.randrange(self.p) for _ in range(self.m)])

    def fmt(self, a) -> str:
        terms = []
        for i in range(self.m - 1, -1, -1):
            c = int(a[i])
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            terms.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(terms) if terms else "0"

    # polynomials / series in U with coefficients in the field
    def upoly_zero(self, length: int = 0):
        return np.zeros((length, self.m), dtype=np.int64)

    def upoly_from_fp(self, coeffs):
        """Embed an F_p polynomial in U (ascending integer coefficients)."""
        out = self.upoly_zero(len(coeffs))
        for i, c in enumerate(coeffs):
            out[i, 0] = int(c) % self.p
        return out

    def uscale(self, c, A):
        if A.shape[0] == 0:
            return A
        return A @ self.mul_matrix(c) % self.p

    def umul(self, A, B, trunc: int | None = None):
        la, lb = A.shape[0], B.shape[0]
        if la == 0 or lb == 0:
            return self.upoly_zero(0)
        L = la + lb - 1 if trunc is None else min(la + lb - 1, trunc)
        m = self.m
        W = max(2 * m - 1, 1)
        C = np.zeros((L, W), dtype=np.int64)
        big = self.p > (1 << 14)
        for i in range(la):
            if i >= L:
                break
            a = A[i]
            if not a.any():
                continue
            T = np.zeros((m, W), dtype=np.int64)
            for k in range(m):
                T[k, k : k + m] = a
            rows = min(lb, L - i)
            C[i : i + rows] += B[:rows] @ T
            if big:
                C %= self.p
        return self.reduce(C)

    def uadd(self, A, B):
        L = max(A.shape[0], B.shape[0])
        out = self.upoly_zero(L)
        out[: A.shape[0]] += A
        out[: B.shape[0]] += B
        return out % self.p

    def utrim(self, A):
        nz = np.nonzero(A.any(axis=1))[0]
        return A[: nz[-1] + 1] if len(nz) else A[:0]

    def uval(self, A) -> int | None:
        nz = np.nonzero(A.any(axis=1))[0]
        return int(nz[0]) if len(nz) else None

    def utaylor(self, coeffs, shift):
        """F_p polynomial f(shift + U) as a U-polynomial over the field."""
        out = self.upoly_zero(0)
        lin = np.stack([shift, self.one()])
        for c in reversed(coeffs):
            out = self.umul(out, lin) if out.shape[0] else out
            const = self.upoly_from_fp([c])
            out = self.uadd(out, const)
        return self.utrim(out)

    def uinv(self, A, N: int):
        """Inverse of a unit power series modulo U^N (Newton iteration)."""
        inv = self.upoly_zero(1)
        inv[0] = self.inv(A[0])
        prec = 1
        two = self.upoly_zero(1)
        two[0] = self.const(2)
        while prec < N:
            prec = min(2 * prec, N)
            t = self.umul(A[:prec], inv, trunc=prec)
            t = self.uadd(two, (-t) % self.p)
            inv = self.umul(inv, t, trunc=prec)
        return inv

    # polynomials in z (lists of elements, ascending)
    def zstrip(self, f):
        f = list(f)
        while f and not f[-1].any():
            f.pop()
        return f

    def zmul(self, f, g):
        if not f or not g:
            return []
        out = [self.zero() for _ in range(len(f) + len(g) - 1)]
        for i, a in enumerate(f):
            if not a.any():
                continue
            for j, b in enumerate(g):
                if b.any():
                    out[i + j] = self.add(out[i + j], self.mul(a, b))
        return self.zstrip(out)

    def zdivmod(self, f, g):
        f = self.zstrip(f)
        g = self.zstrip(g)
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        inv = self.inv(g[-1])
        r = [x.copy() for x in f]
        dg = len(g) - 1
        q = [self.zero() for _ in range(max(len(r) - dg, 0))]
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k]
            if not c.any():
                continue
            c = self.mul(c, inv)
            q[k - dg] = c
            for j in range(dg + 1):
                r[k - dg + j] = self.sub(r[k - dg + j], self.mul(c, g[j]))
        return self.zstrip(q), self.zstrip(r[:dg])

    def zmonic(self, f):
        f = self.zstrip(f)
        inv = self.inv(f[-1])
        return [self.mul(c, inv) for c in f]

    def zgcd(self, f, g):
        f, g = self.zstrip(f), self.zstrip(g)
        while g:
            f, g = g, self.zdivmod(f, g)[1]
        return self.zmonic(f) if f else f

    def zderiv(self, f):
        return self.zstrip([self.smul(i, c) for i, c in enumerate(f)][1:])

    def zsub(self, f, g):
        L = max(len(f), len(g))
        out = []
        for i in range(L):
            a = f[i] if i < len(f) else self.zero()
            b = g[i] if i < len(g) else self.zero()
            out.append(self.sub(a, b))
        return self.zstrip(out)

    def zsquarefree(self, f):
        """Yun: [(monic g, multiplicity)] for a polynomial with nonzero derivative parts."""
        f = self.zmonic(f)
        if len(f) <= 1:
            return []
        df = self.zderiv(f)
        if not df:
            raise Unsupported("residual polynomial is a p-th power")
        c = self.zgcd(f, df)
        w = self.zdivmod(f, c)[0]
        out = []
        i = 1
        while len(w) > 1:
            y = self.zgcd(w, c)
            fac = self.zdivmod(w, y)[0]
            if len(fac) > 1:
                out.append((self.zmonic(fac), i))
            i += 1
            w = y
            c = self.zdivmod(c, y)[0]
        if len(c) > 1:
            raise Unsupported("residual polynomial has an inseparable part")
        return out

    # the algebra F_q[z]/(g) as an F_p vector space of dimension m*deg g
    def _algebra_frobenius(self, g):
        """F_p-matrix of a -> a^p on F_q[z]/(g), acting on flattened row vectors."""
        d = len(g) - 1
        m = self.m

        def amul(a, b):
            return self.zdivmod(self.zmul(a, b), g)[1]

        z = [self.zero(), self.one()] if d > 1 else self.zdivmod([self.zero(), self.one()], g)[1]
        zp = _zpow(self, z, self.p, amul)
        powers = [[self.one()]]
        for _ in range(1, d):
            powers.append(amul(powers[-1], zp))
        Mt = self.mul_matrix(self.pow(self.theta(), self.p)) if m > 1 else None
        rows = []
        for j in range(d):
            cur = _pad(self, powers[j], d)
            for i in range(m):
                rows.append(cur.reshape(-1).copy())
                if m > 1:
                    cur = cur @ Mt % self.p
        return np.array(rows, dtype=np.int64).reshape(d * m, d * m)

    def distinct_degree(self, g):
        """Monic squarefree g -> [(product of irreducible factors of degree k, k)]."""
        g = self.zmonic(g)
        out = []
        if len(g) <= 2:
            return [(g, 1)] if len(g) == 2 else []
        Phi = self._algebra_frobenius(g)
        Q = _matpow_mod(Phi, self.m, self.p)
        d = len(g) - 1
        zvec = _pad(self, [self.zero(), self.one()], d).reshape(-1)
        h = zvec.copy()
        rest = g
        k = 0
        while len(rest) - 1 >= 2 * (k + 1):
            k += 1
            h = h @ Q % self.p
            hz = _unpad(self, h.reshape(d, self.m))
            diff = self.zsub(hz, [self.zero(), self.one()])
            fac = self.zgcd(rest, diff) if diff else rest
            if len(fac) > 1:
                out.append((fac, k))
                rest = self.zdivmod(rest, fac)[0]
                rest = self.zmonic(rest)
        if len(rest) > 1:
            out.append((rest, len(rest) - 1))
        return out

    def equal_degree(self, g, k: int, rng: random.Random):
        """Split monic squarefree g whose irreducible factors all have degree k."""
        d = len(g) - 1
        if d == k:
            return [g]
        Phi = self._algebra_frobenius(g)

        def amul(a, b):
            return self.zdivmod(self.zmul(a, b), g)[1]

        m = self.m
        while True:
            a = self.zstrip([self.random(rng) for _ in range(d)])
            if len(a) < 2:
                continue
            # a^((q^k - 1)/2) = (prod_{i < mk} a^(p^i))^((p-1)/2)
            vec = _pad(self, a, d).reshape(-1)
            prod = [self.one()]
            cur = vec
            for _ in range(m * k):
                prod = amul(prod, _unpad(self, cur.reshape(d, m)))
                cur = cur @ Phi % self.p
            b = _zpow(self, prod, (self.p - 1) // 2, amul)
            b1 = self.zsub(b, [self.one()])
            if not b1:
                continue
            h = self.zgcd(g, b1)
            if 1 < len(h) < len(g):
                return self.equal_degree(h, k, rng) + self.equal_degree(self.zmonic(self.zdivmod(g, h)[0]), k, rng)

    def factor(self, f, rng: random.Random | None = None, split: bool = False):
        """[(monic factor, degree, multiplicity)]; with split=False the factors of
        one degree and multiplicity may be grouped."""
        rng = rng or random.Random(0)
        out = []
        for g, mult in self.zsquarefree(f):
            for part, k in self.distinct_degree(g):
                if split:
                    for irr in self.equal_degree(part, k, rng):
                        out.append((irr, k, mult))
                else:
                    out.append((part, k, mult))
        return out


def _pad(F: GF, a, d: int):
    out = np.zeros((d, F.m), dtype=np.int64)
    for i, c in enumerate(a[:d]):
        out[i] = c
    return out


def _unpad(F: GF, arr):
    return F.zstrip([row.copy() for row in arr])


def _zpow(F: GF, a, k: int, amul):
    out = [F.one()]
    base = a
    while k:
        if k & 1:
            out = amul(out, base)
        k >>= 1
        if k:
            base = amul(base, base)
    return out


def _matpow_mod(M, k: int, p: int):
    n = M.shape[0]
    out = np.eye(n, dtype=np.int64)
    base = M % p
    while k:
        if k & 1:
            out = _matmul_mod(out, base, p)
        k >>= 1
        if k:
            base = _matmul_mod(base, base, p)
    return out


def _matmul_mod(A, B, p: int):
    if p < (1 << 20) and A.shape[1] * (p - 1) ** 2 < (1 << 62):
        return A @ B % p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = (out + np.outer(A[:, k], B[k]) % p) % p
    return out


def solve_mod_p(A, b, p: int):
    """Solve A x = b (A square, invertible) over F_p."""
    n = A.shape[0]
    M = np.concatenate([A % p, (b % p).reshape(n, -1)], axis=1).astype(np.int64)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r, col] % p), None)
        if piv is None:
            raise ArithmeticError("singular system mod p")
        if piv != col:
            M[[col, piv]] = M[[piv, col]]
        M[col] = M[col] * pow(int(M[col, col]), -1, p) % p
        others = M[:, col].copy()
        others[col] = 0
        M = (M - np.outer(others, M[col]) % p) % p
    return M[:, n:]


def rank_mod_p(A, p: int) -> int:
    M = (A % p).astype(np.int64).copy()
    rows, cols = M.shape
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if M[i, col]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        M[r] = M[r] * pow(int(M[r, col]), -1, p) % p
        others = M[:, col].copy()
        others[r] = 0
        M = (M - np.outer(others, M[r]) % p) % p
        r += 1
        if r == rows:
            break
    return r


def _strip(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _strip(out)


def _psub(a, b, p):
    L = max(len(a), len(b))
    return _strip([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(L)])


def _pdivmod(a, b, p):
    a = _strip(a)
    r = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(r) - db, 0)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] % p
        if c:
            c = c * inv % p
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return _strip(q), _strip(r[:db])


def extension_by(F: GF, psi, max_tries: int = 64):
    """Flat field isomorphic to F[y]/(psi) for monic irreducible psi over F.

    Returns (G, embed, root): embed maps F-elements (as rows) to G-elements via
    row @ embed, and root is the image of y."""
    d = len(psi) - 1
    m = F.m
    M = d * m
    p = F.p

    def amul(a, b):
        return F.zdivmod(F.zmul(a, b), psi)[1]

    if d == 1:
        return F, np.eye(m, dtype=np.int64), F.neg(psi[0])
    for c in range(max_tries):
        # gamma = y + c*theta generates F[y]/(psi) over F_p for all but few c
        gamma = [F.smul(c, F.theta()), F.one()]
        powers = [[F.one()]]
        for _ in range(M):
            powers.append(amul(powers[-1], gamma))
        vecs = np.array([_pad(F, pw, d).reshape(-1) for pw in powers], dtype=np.int64)
        B = vecs[:M].T
        if rank_mod_p(B, p) < M:
            continue
        coeffs = solve_mod_p(B, (-vecs[M]) % p, p).reshape(-1)
        G = GF(p, [int(x) for x in coeffs] + [1])
        Binv = solve_mod_p(B, np.eye(M, dtype=np.int64), p)
        # theta^i sits at flat index i, y at flat index m
        embed = (Binv[:, :m].T) % p
        root = Binv[:, m] % p
        return G, embed, root
    raise Unsupported("no primitive element found for the residue field extension")
