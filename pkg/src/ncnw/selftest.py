"""Exhaustive property suite behind ``ncnw selftest``.

Every check enumerates all partitions up to the requested size and counts
cases and failures.  The report holds no timings, so two runs with the same
arguments serialize identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import bijections as bij
from . import fillings as fl
from .enumeration import (
    PartitionClass,
    class_poly,
    iter_partitions,
    matching_to_motzkin,
    motzkin_to_matching,
    verify_donaghey,
    verify_euler,
    verify_gamma,
    verify_stirling,
    search_nesting_counterexample,
)
from .numbers import binomial, catalan, motzkin
from .partitions import (
    Convention,
    Kind,
    Mode,
    arcs,
    chain_sizes,
    block_arcs,
    max_chain_bruteforce,
    partition_from_arcs,
)


@dataclass
class Check:
    name: str
    cases: int = 0
    failures: int = 0
    examples: list[str] = field(default_factory=list)

    def expect(self, ok: bool, detail: str) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if len(self.examples) < 5:
                self.examples.append(detail)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "cases": self.cases,
            "failures": self.failures,
            "passed": self.passed,
            "examples": self.examples,
        }


def check_core(nmax: int, kmax: int) -> list[Check]:
    roundtrip = Check("arcs-roundtrip")
    oracle = Check("max-chain-vs-bruteforce")
    contain = Check("class-containments")
    symmetry = Check("crossing-nesting-symmetry")
    for n in range(nmax + 1):
        nc_counts = [0] * (kmax + 1)
        nn_counts = [0] * (kmax + 1)
        for p in iter_partitions(n):
            a = arcs(p)
            roundtrip.expect(partition_from_arcs(a) == p, f"{p}")
            fast = chain_sizes(a.arcs)
            slow = (
                max_chain_bruteforce(a.arcs, Mode.CROSSING, Kind.STRICT)[0],
                max_chain_bruteforce(a.arcs, Mode.CROSSING, Kind.ENHANCED)[0],
                max_chain_bruteforce(a.arcs, Mode.NESTING, Kind.STRICT)[0],
                max_chain_bruteforce(a.arcs, Mode.NESTING, Kind.ENHANCED)[0],
            )
            oracle.expect(fast == slow, f"{p}: {fast} vs {slow}")
            cross, enh, nest, _ = fast
            for k in range(3, kmax + 1):
                ok = (not cross < k - 1 or enh < k) and (not enh < k or cross < k)
                contain.expect(ok, f"{p} k={k}")
            for k in range(2, kmax + 1):
                nc_counts[k] += cross < k
                nn_counts[k] += nest < k
        for k in range(2, kmax + 1):
            symmetry.expect(nc_counts[k] == nn_counts[k], f"n={n} k={k}")
    return [roundtrip, oracle, contain, symmetry]


def check_fillings(nmax: int, kmax: int) -> list[Check]:
    c_equiv = Check("C-crossing-vs-proper-chain")
    e_equiv = Check("E-enhanced-vs-proper-chain")
    f_trip = Check("f-roundtrip")
    card = Check("C-E-cardinality")
    for m in range(1, nmax + 1):
        for p in iter_partitions(m):
            cross, enh, _, _ = chain_sizes(block_arcs(p.blocks))
            cf, ef = fl.map_C(p), fl.map_E(p)
            c_equiv.expect(fl.inv_C(cf) == p, f"inv_C {p}")
            e_equiv.expect(fl.inv_E(ef) == p, f"inv_E {p}")
            c_chain, e_chain = fl.max_proper_se_chain(cf), fl.max_proper_se_chain(ef)
            for k in range(2, kmax + 1):
                c_equiv.expect((cross >= k) == (c_chain >= k), f"{p} k={k}")
                e_equiv.expect((enh >= k) == (e_chain >= k), f"{p} k={k}")
    fmax = min(nmax, 7)
    for n in range(0, fmax + 1):
        e_counts = {k: [0] * (n + 1) for k in (2, 3)}
        for i in range(n + 1):
            for e in fl.iter_simple_fillings(i):
                if e.zero_hooks():
                    continue
                for k in (2, 3):
                    e_counts[k][i] += fl.filling_class(e, k).in_C_class
        c_counts = {2: 0, 3: 0}
        for f in fl.iter_simple_fillings(n):
            comp, e = fl.map_f(f)
            f_trip.expect(fl.inv_f(comp, e) == f and len(e.ones) == len(f.ones), f"{f.to_json()}")
            for k in (2, 3):
                c_counts[k] += fl.filling_class(f, k).in_C_class
        for k in (2, 3):
            predicted = sum(binomial(n, i) * e_counts[k][i] for i in range(n + 1))
            card.expect(c_counts[k] == predicted, f"n={n} k={k}: {c_counts[k]} vs {predicted}")
    return [c_equiv, e_equiv, f_trip, card]


def check_bijections(nmax: int, kmax: int) -> list[Check]:
    bijective = Check("phi-bijection")
    coherent = Check("phi-psi-coherence")
    for m in range(1, nmax + 1):
        parts = list(iter_partitions(m, Convention.ZERO))
        for k in range(2, kmax + 1):
            images = set()
            nc = 0
            for p in parts:
                if bij.in_nc(p, k):
                    nc += 1
                    q, _ = bij.phi_inv(p, k)
                    bijective.expect(bij.phi(q, k)[0] == p, f"phi(phi_inv({p}))")
                if not bij.in_bnw(p, k):
                    continue
                q, _ = bij.phi(p, k)
                images.add(q)
                bijective.expect(len(q) == len(p), f"weight {p}")
                bijective.expect(bij.phi_inv(q, k)[0] == p, f"phi_inv(phi({p}))")
                if k == 2:
                    coherent.expect(bij.phi_k2_via_psi(p) == q, f"{p}")
            bijective.expect(len(images) == nc, f"m={m} k={k}: image size {len(images)} vs |NC|={nc}")
    return [bijective, coherent]


def check_identities(nmax: int, kmax: int) -> list[Check]:
    euler = Check("euler-identity")
    for n in range(1, nmax):
        for k in range(2, kmax + 1):
            euler.expect(verify_euler(n, k).equal, f"n={n} k={k}")
    numbers = Check("numbers-and-gamma")
    for n in range(nmax + 1):
        numbers.expect(class_poly(n, 2, PartitionClass.NC)(1) == catalan(n), f"catalan n={n}")
        numbers.expect(class_poly(n, 2, PartitionClass.NW)(1) == motzkin(n), f"motzkin n={n}")
        if n < nmax:
            numbers.expect(verify_gamma(n).equal, f"gamma n={n}")
            numbers.expect(verify_donaghey(n).equal, f"donaghey n={n}")
        if 1 <= n < nmax:
            numbers.expect(verify_stirling(n).equal, f"stirling n={n}")
    motz = Check("motzkin-roundtrip")
    for n in range(nmax + 1):
        for p in iter_partitions(n):
            if all(len(b) <= 2 for b in p.blocks) and chain_sizes(block_arcs(p.blocks))[0] < 2:
                motz.expect(motzkin_to_matching(matching_to_motzkin(p)) == p, f"{p}")
    gap = Check("nesting-gap")
    if nmax >= 4:
        found = search_nesting_counterexample(min(nmax - 1, 4))
        w = found.witness
        gap.expect(w is not None and w.params == {"n": 3, "k": 2}, "witness at (3, 2)")
        gap.expect(found.agree_at_one, "agreement at t=1")
    return [euler, numbers, motz, gap]


def run_selftest(nmax: int = 8, kmax: int = 4) -> dict:
    checks = (
        check_core(nmax, kmax)
        + check_fillings(nmax, kmax)
        + check_bijections(nmax, kmax)
        + check_identities(nmax, kmax)
    )
    return {
        "nmax": nmax,
        "kmax": kmax,
        "passed": all(c.passed for c in checks),
        "checks": [c.to_json() for c in checks],
    }


def report_text(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
