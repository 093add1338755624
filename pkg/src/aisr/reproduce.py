"""The reproduction suite: a fixed registry of claims, each re-checked from
scratch, collected into a versioned JSON report."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import catalog
from .algebra import (
    BudgetExceeded,
    direct_product,
    enumerate_ai_semirings,
    find_isomorphism,
    iter_embeddings,
    satisfies,
    validate,
)
from .certify import CERTIFIED_TAGS, NotCertifiable, certify, displayed_chains
from .characterize import DECIDERS, decide_scab, decide_sr6, decide_variety
from .corpus import InequalityCorpus, truth_table
from .families import named, sigma, u_n
from .freeness import SearchBoundExceeded, is_free, is_subterm
from .proof import StepError, check_leq_chain, check_proof, search_derivation
from .structure import ab_pairs, ab_quotient, abcd_quads, abcd_quotient
from .terms import Term, Word, format_term, parse_term

SCHEMA_VERSION = 1
VERIFIED, REFUTED, SKIPPED = "verified", "refuted", "skipped"


@dataclass
class Options:
    sigma_max: int = 3
    m_max: int = 4
    triples: int = 10_000
    seed: int = 0
    certificate_stride: int = 10
    budget: Optional[int] = None


@dataclass
class Item:
    id: str
    description: str
    status: str
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0


@dataclass
class ReproReport:
    items: list[Item]
    options: dict

    @property
    def refuted(self) -> bool:
        return any(i.status == REFUTED for i in self.items)

    def counts(self) -> dict[str, int]:
        out = {VERIFIED: 0, REFUTED: 0, SKIPPED: 0}
        for i in self.items:
            out[i.status] += 1
        return out

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "options": self.options,
            "summary": self.counts(),
            "items": [asdict(i) for i in self.items],
        }

    def to_text(self) -> str:
        lines = []
        for i in self.items:
            lines.append(f"[{i.status:>8}] {i.id:17s} {i.description} ({i.elapsed:.2f}s)")
            for k, v in i.details.items():
                lines.append(f"               {k}: {v}")
        c = self.counts()
        lines.append(f"{c[VERIFIED]} verified, {c[REFUTED]} refuted, {c[SKIPPED]} skipped")
        return "\n".join(lines)


def _status(ok: bool) -> str:
    return VERIFIED if ok else REFUTED


# -- claims --------------------------------------------------------------------


def claim_axioms(opt: Options):
    algebras = [catalog.sr6(), catalog.scab(), catalog.scabc(), catalog.d2(), catalog.scab0()]
    found = {A.name: [v.axiom for v in validate(A)] for A in algebras}
    return _status(not any(found.values())), {"violations": found}


def claim_sr6_identities(opt: Options):
    S = catalog.sr6()
    labels = ["SR02", "SR03", "SR04"] + [f"sigma:{n}" for n in range(1, opt.sigma_max + 1)]
    results = {}
    for lab in labels:
        v = satisfies(S, named(lab), budget=opt.budget)
        results[lab] = {"holds": v.holds, "assignments": v.checked}
        if not v.holds:
            results[lab]["witness"] = v.describe(S)
    return _status(all(r["holds"] for r in results.values())), results


def claim_separation(opt: Options):
    S, F = catalog.sr6(), catalog.scab()
    d1 = named("I26022301")
    in_scab = satisfies(F, d1)
    in_sr6 = satisfies(S, d1)
    deltas = {f"delta:{n}": satisfies(F, named(f"delta:{n}"), budget=opt.budget).holds for n in (1, 2, 3)}
    ok = in_scab.holds and not in_sr6.holds and all(deltas.values())
    details = {"holds in Sc:ab": in_scab.holds, "holds in SR6": in_sr6.holds, "delta in Sc:ab": deltas}
    if in_sr6.witness:
        details["SR6 witness"] = in_sr6.describe(S)
    return _status(ok), details


_ORACLES = (("Scab", catalog.scab), ("D2", catalog.d2), ("Scab0", catalog.scab0), ("SR6", catalog.sr6))


def claim_deciders(opt: Options):
    corpus = InequalityCorpus()
    ineqs = list(corpus)
    details = {"corpus size": len(ineqs)}
    ok = True
    for tag, make in _ORACLES:
        truth = truth_table(make(), corpus)
        decide = DECIDERS[tag]
        mismatch = [str(ineqs[j]) for j in range(len(ineqs)) if bool(decide(ineqs[j].lhs, ineqs[j].rhs)) != truth[j]]
        details[tag] = {"holds": int(truth.sum()), "discrepancies": len(mismatch), "first": mismatch[:3]}
        ok &= not mismatch
    return _status(ok), details


def claim_freeness(opt: Options):
    ok = True
    grid = {}
    for m in range(1, opt.m_max + 1):
        for n in range(1, m + 1):
            free = is_free(u_n(m), u_n(n))
            grid[f"u{m} vs u{n}"] = free
            ok &= free == (n < m)
    patterns = ["x^3", "x^2", "x + x*y", "x*y*z", "x1 + x2*x3*x4"]
    rhs = {}
    for w in patterns:
        t = parse_term(w)
        rhs[w] = all(is_free(u_n(m), t) for m in range(1, opt.m_max + 1))
        ok &= rhs[w]
    return _status(ok), {"cycles": grid, "right-hand sides free": rhs}


def _random_word(rng: random.Random, names: list[str], max_len: int = 2) -> Word:
    return Word.of(*(rng.choice(names) for _ in range(rng.randint(1, max_len))))


def _random_term(rng: random.Random, names: list[str], max_words: int = 3, max_len: int = 2) -> Term:
    return Term(_random_word(rng, names, max_len) for _ in range(rng.randint(1, max_words)))


def subterm_triples(count: int, seed: int):
    """Triples (u, v, w) with u a subterm of w by construction."""
    rng = random.Random(seed)
    names = ["x", "y", "z"]
    for _ in range(count):
        u = _random_term(rng, names)
        p = _random_word(rng, names, 1) if rng.random() < 0.5 else None
        w = u if p is None else p * u
        if rng.random() < 0.5:
            w = w + _random_term(rng, names, 2)
        v = _random_term(rng, names, 4, 3)
        yield u, v, w


def claim_inheritance(opt: Options):
    applicable = violations = 0
    first = None
    for u, v, w in subterm_triples(opt.triples, opt.seed):
        if is_subterm(u, w) is None:
            raise AssertionError("generator produced a non-subterm")
        if is_free(v, u):
            applicable += 1
            if not is_free(v, w):
                violations += 1
                first = first or f"v={v}, u={u}, w={w}"
    details = {"triples": opt.triples, "v u-free": applicable, "violations": violations}
    if first:
        details["first violation"] = first
    return _status(violations == 0), details


def claim_proofs(opt: Options):
    chains = {}
    ok = True
    for name, goal, chain in displayed_chains():
        res = check_leq_chain(chain)
        chains[name] = bool(res) and chain.proves(goal)
        ok &= chains[name]
    d1_only = _delta_basis()
    script = search_derivation(d1_only, named("delta:2"), depth=4)
    found = script is not None and check_proof(script, named("delta:2"))
    corrupted_located = None
    if script is not None:
        bad = _corrupt(script)
        try:
            check_proof(bad, named("delta:2"))
        except StepError as exc:
            corrupted_located = exc.index
    ok &= found and corrupted_located is not None
    return _status(ok), {
        "chains": chains,
        "delta:2 script steps": len(script.steps) if script else None,
        "corrupted script fails at step": corrupted_located,
    }


def _delta_basis():
    from .families import parse_basis

    return parse_basis({"I26022301": "I26022301"})


def _corrupt(script):
    """Shift the context of the last step so it no longer matches."""
    from dataclasses import replace

    from .proof import ProofScript

    last = script.steps[-1]
    bad = replace(last, context=Word.var("x9"))
    return ProofScript(script.basis, script.start, script.steps[:-1] + (bad,))


def claim_certificates(opt: Options):
    """Every corpus inequality a decider accepts gets a checked chain."""
    corpus = list(InequalityCorpus())[:: opt.certificate_stride]
    details = {"stride": opt.certificate_stride, "inequalities": len(corpus)}
    ok = True
    for tag in CERTIFIED_TAGS:
        decide = DECIDERS[tag]
        proved = failed = 0
        for ineq in corpus:
            holds = bool(decide(ineq.lhs, ineq.rhs))
            try:
                chain = certify(tag, ineq.lhs, ineq.rhs)
            except NotCertifiable:
                ok &= not holds
                continue
            good = holds and bool(check_leq_chain(chain)) and chain.proves(ineq)
            proved += good
            failed += not good
        details[tag] = {"certified": proved, "bad": failed}
        ok &= failed == 0
    return _status(ok), details


def _images(A, B) -> list[list[str]]:
    found = {tuple(sorted(e.values())) for e in iter_embeddings(A, B)}
    return [[B.label(v) for v in img] for img in sorted(found)]


def claim_lattice(opt: Options):
    S = catalog.sr6()
    P = direct_product(S, S)
    details = {}
    embeds_a = _images(catalog.sca(), S)
    embeds_ab = _images(catalog.scab(), S)
    target = sorted(["1", "3", "5", "6"])
    ok = bool(embeds_a) and target in embeds_ab
    details["Sc:a images"] = embeds_a
    details["Sc:ab images"] = embeds_ab
    for A in (S, P):
        pairs = list(ab_pairs(A))
        res = [ab_quotient(A, a, b) for a, b in pairs]
        quads = abcd_quads(A)
        res4 = [abcd_quotient(A, *map(int, row)) for row in quads]
        good2, good4 = sum(r.ok for r in res), sum(r.ok for r in res4)
        entry = {"a,b pairs": len(pairs), "quotient = Sc:ab": good2, "a,b,c,d quads": len(quads), "quotient = SR6": good4}
        if res4:
            r = res4[0]
            entry["example"] = {
                "a,b,c,d": [A.label(x) for x in r.quad],
                "classes": [sorted(A.label(x) for x in c) for c in r.classes],
            }
        details[A.name] = entry
        ok &= bool(pairs) and good2 == len(pairs) and len(quads) > 0 and good4 == len(quads)
    return _status(ok), details


def claim_minimality(opt: Options):
    algs = enumerate_ai_semirings(2)
    sr04 = named("SR04")
    sat = [A for A in algs if satisfies(A, sr04).holds]
    d2 = [A for A in algs if find_isomorphism(A, catalog.d2())]
    ok = len(sat) == 1 and find_isomorphism(sat[0], catalog.sca()) is not None
    ok &= len(d2) == 1 and not satisfies(d2[0], sr04).holds
    return _status(ok), {"classes": len(algs), "satisfying SR04": len(sat), "D2 present": bool(d2)}


def claim_chain(opt: Options):
    corpus = InequalityCorpus()
    ineqs = list(corpus)
    sca = truth_table(catalog.sca(), corpus)
    bad = []
    for j, i in enumerate(ineqs):
        s6, ab = decide_sr6(i.lhs, i.rhs), bool(decide_scab(i.lhs, i.rhs))
        if (s6 and not ab) or (ab and not sca[j]):
            bad.append(str(i))
    d1, t01 = named("I26022301"), named("t01")
    seps = {
        "I26022301 in SR6": decide_variety("SR6", d1),
        "I26022301 in Sc:ab": decide_variety("Scab", d1),
        "t01 in Sc:ab": decide_variety("Scab", t01),
        "t01 in Sc:a": satisfies(catalog.sca(), t01).holds,
    }
    strict = not seps["I26022301 in SR6"] and seps["I26022301 in Sc:ab"] and not seps["t01 in Sc:ab"] and seps["t01 in Sc:a"]
    return _status(not bad and strict), {"corpus size": len(ineqs), "violations": bad[:3], "separations": seps}


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    run: Callable[[Options], tuple[str, dict]]


REGISTRY = tuple(
    sorted(
        [
            Claim("axioms", "catalog algebras are commutative ai-semirings", claim_axioms),
            Claim("sr6-identities", "SR6 satisfies SR02, SR03, SR04 and sigma_n", claim_sr6_identities),
            Claim("separation", "I26022301 separates Sc:ab from SR6; delta_n hold in Sc:ab", claim_separation),
            Claim("deciders", "syntactic deciders agree with brute force on the corpus", claim_deciders),
            Claim("freeness", "u^(m) is u^(n)-free exactly when n < m; basis right-hand sides", claim_freeness),
            Claim("free-inheritance", "u-freeness passes to terms containing u", claim_inheritance),
            Claim("proofs", "displayed derivation chains and the delta_2 script check", claim_proofs),
            Claim("certificates", "accepted corpus inequalities have checked derivations", claim_certificates),
            Claim("lattice", "Sc:a, Sc:ab and SR6 recovered as subalgebras and quotients", claim_lattice),
            Claim("minimality", "Sc:a is the only order-2 class satisfying SR04", claim_minimality),
            Claim("chain", "theories shrink along SR6, Sc:ab, Sc:a, strictly", claim_chain),
        ],
        key=lambda c: c.id,
    )
)
CLAIM_IDS = tuple(c.id for c in REGISTRY)


def _run_one(claim_id: str, opt: Options) -> Item:
    claim = next(c for c in REGISTRY if c.id == claim_id)
    t0 = time.perf_counter()
    try:
        status, details = claim.run(opt)
    except (BudgetExceeded, SearchBoundExceeded) as exc:
        status, details = SKIPPED, {"reason": str(exc)}
    except Exception as exc:  # a crash is reported, never counted as verified
        status, details = REFUTED, {"error": f"{type(exc).__name__}: {exc}"}
    return Item(claim.id, claim.description, status, _plain(details), round(time.perf_counter() - t0, 3))


def _plain(x):
    """Make details JSON-friendly (numpy scalars, tuples, sets)."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_plain(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return x


def run(selected: Optional[list[str]] = None, options: Optional[Options] = None, jobs: int = 1) -> ReproReport:
    """Run the selected claims (all by default); unselected ones are skipped."""
    opt = options or Options()
    chosen = list(CLAIM_IDS) if not selected else list(dict.fromkeys(selected))
    unknown = [c for c in chosen if c not in CLAIM_IDS]
    if unknown:
        raise KeyError(f"unknown claim(s): {', '.join(unknown)}; known: {', '.join(CLAIM_IDS)}")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            done = dict(zip(chosen, pool.map(_run_one, chosen, [opt] * len(chosen))))
    else:
        done = {c: _run_one(c, opt) for c in chosen}
    items = []
    for claim in REGISTRY:
        if claim.id in done:
            items.append(done[claim.id])
        else:
            items.append(Item(claim.id, claim.description, SKIPPED, {"reason": "not selected"}))
    return ReproReport(items, asdict(opt))
