import itertools
import json
import math
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitroots import golden
from splitroots.errors import (CheckpointMismatch, InsufficientSamples, MissingArtinData,
                               MissingVolume, NoMatch, NotCongruent)
from splitroots.geometry import RegionSpec, domain_volume, trivial_basis
from splitroots.perms import PermSet, compute_g, compute_ghat, coset_rep, identity
from splitroots.poly import IntPolynomial
from splitroots.relations import detect_relations
from splitroots.roots import complex_roots
from splitroots.split import SortedRootVector, SplitPrimeStream
from splitroots.survey import (SurveyConfig, SurveyCounters, artin_subgroup, band_cdf,
                               classify_m_mu, conjecture3_report, conjecture_report, find_sigmas,
                               k_vector, m_mu_shares, merge_all, read_checkpoint, report_rows,
                               required_moduli, r_set, rows_to_csv, run_survey, survey_range,
                               write_checkpoint)

from conftest import basis

P = IntPolynomial.parse


def brute_sigmas(roots, b):
    p, r = roots.p, roots.roots
    out = set()
    for s in itertools.permutations(range(1, b.n + 1)):
        if all((sum(row[i] * r[s[i] - 1] for i in range(b.n)) - row[-1]) % p == 0 for row in b.rows):
            out.add(s)
    return out


def brute_r_set(b, sigma, k, L, allowed_q):
    out = set()
    for pat in itertools.product(range(L), repeat=b.n):
        for q in allowed_q:
            if all((sum(row[i] * pat[sigma[i] - 1] for i in range(b.n)) - row[-1] - kj * q) % L == 0
                   for row, kj in zip(b.rows, k)):
                out.add(pat)
                break
    return out


def first_primes(f, count, lo=0):
    out = []
    for roots in SplitPrimeStream(f, lo, 10 ** 9):
        out.append(roots)
        if len(out) == count:
            return out


@pytest.fixture(scope="module")
def quartic_cyclotomic_basis():
    return detect_relations(complex_roots(P("x^4+1")))


class TestFindSigmas:
    @pytest.mark.parametrize("text,fixture", [
        (golden.SEXTIC, "sextic_basis"), (golden.TWO_QUADRATICS, "two_quadratics_basis"),
        (golden.SHIFTED_SQRT2, "shifted_sqrt2_basis")])
    def test_matches_brute_force(self, text, fixture, request):
        b = request.getfixturevalue(fixture)
        ghat = compute_ghat(b)
        for roots in first_primes(P(text), 40, lo=100):
            found = find_sigmas(roots, b)
            assert set(found.elements) == brute_sigmas(roots, b)
            assert len(found) == len(ghat)

    def test_octic_matches_brute_force(self, octic_basis):
        for roots in first_primes(P(golden.OCTIC), 2, lo=1000):
            assert set(find_sigmas(roots, octic_basis).elements) == brute_sigmas(roots, octic_basis)

    def test_relation_free_gives_everything(self):
        b = trivial_basis(3)
        for roots in first_primes(P("x^3+2"), 5, lo=100):
            assert len(find_sigmas(roots, b)) == 6

    def test_quartic_cyclotomic_pairs(self, quartic_cyclotomic_basis):
        for roots in first_primes(P("x^4+1"), 30, lo=50):
            for s in find_sigmas(roots, quartic_cyclotomic_basis):
                assert {s[0], s[3]} in ({1, 4}, {2, 3})

    def test_shifted_sqrt2_large_primes(self, shifted_sqrt2_basis):
        for roots in first_primes(P(golden.SHIFTED_SQRT2), 20, lo=10 ** 6):
            assert find_sigmas(roots, shifted_sqrt2_basis).sorted() == list(golden.SHIFTED_SQRT2_GHAT)


class TestKVector:
    def test_quadratic(self):
        b = basis(2, (1, 1, 0))
        for roots in first_primes(P("x^2+1"), 20):
            assert k_vector(roots, b, (1, 2)) == [1]

    def test_shifted_sqrt2(self, shifted_sqrt2_basis):
        for roots in first_primes(P(golden.SHIFTED_SQRT2), 20, lo=100):
            for s in golden.SHIFTED_SQRT2_GHAT:
                assert tuple(k_vector(roots, shifted_sqrt2_basis, s)) == golden.SHIFTED_SQRT2_K

    def test_sextic(self, sextic_basis):
        ghat = compute_ghat(sextic_basis)
        for roots in first_primes(P(golden.SEXTIC), 20, lo=100):
            rep = coset_rep(find_sigmas(roots, sextic_basis).sorted()[0], ghat)
            assert k_vector(roots, sextic_basis, rep) == [1, 1, 1, 1]

    def test_not_congruent(self, shifted_sqrt2_basis):
        roots = first_primes(P(golden.SHIFTED_SQRT2), 1, lo=100)[0]
        with pytest.raises(NotCongruent):
            k_vector(roots, shifted_sqrt2_basis, (2, 1, 3, 4))


class TestMMu:
    def test_published_lists(self):
        f = P(golden.ABELIAN_CUBIC)
        group = PermSet.of(golden.ABELIAN_CUBIC_G0)
        stream = {r.p: r for r in SplitPrimeStream(f, 0, 1000)}
        assert set(stream) == set(golden.ABELIAN_CUBIC_INSIDE) | set(golden.ABELIAN_CUBIC_OUTSIDE)
        for p in golden.ABELIAN_CUBIC_INSIDE:
            assert classify_m_mu(stream[p], golden.ABELIAN_CUBIC_EXPRESSIONS) in group
        for p in golden.ABELIAN_CUBIC_OUTSIDE:
            assert classify_m_mu(stream[p], golden.ABELIAN_CUBIC_EXPRESSIONS) not in group

    def test_no_match(self):
        with pytest.raises(NoMatch):
            classify_m_mu(SortedRootVector(17, (3, 5, 9)), ((0, 1), (1, 1), (2, 1)))

    def test_shares(self):
        f = P(golden.ABELIAN_CUBIC)
        b = trivial_basis(3)
        cfg = SurveyConfig(f, b, compute_ghat(b), 1000,
                           root_expressions=golden.ABELIAN_CUBIC_EXPRESSIONS)
        shares = m_mu_shares(run_survey(cfg), PermSet.of(golden.ABELIAN_CUBIC_G0))
        inside = len(golden.ABELIAN_CUBIC_INSIDE)
        total = inside + len(golden.ABELIAN_CUBIC_OUTSIDE)
        assert shares["inside"] == Fraction(inside, total)


class TestArtin:
    @pytest.mark.parametrize("text,m,elements", [("x^2+1", 4, {1}), ("x^2+1", 3, {1, 2}),
                                                 ("x^4+1", 8, {1})])
    def test_examples(self, text, m, elements):
        a = artin_subgroup(P(text), m, 100_000)
        assert set(a.elements) == elements and a.stable

    def test_too_few_samples(self):
        with pytest.raises(InsufficientSamples):
            artin_subgroup(P("x^2+1"), 4, 100)


class TestPatterns:
    def artin_for(self, f, k, L):
        return {m: artin_subgroup(f, m, 200_000) for m in required_moduli(k, L)}

    def test_quadratic_count(self):
        f = P("x^2+1")
        b = basis(2, (1, 1, 0))
        assert len(r_set(b, (1, 2), (1,), 2, self.artin_for(f, (1,), 2))) == 2

    @pytest.mark.parametrize("L", range(2, 13))
    def test_gaussian_counts(self, L):
        f = P("x^2+1")
        b = basis(2, (1, 1, 0))
        phi = L * sum(1 for q in range(1, L) if math.gcd(q, L) == 1)  # phi(L^2)
        expected = phi // 2 if L % 4 == 0 else phi
        assert len(r_set(b, (1, 2), (1,), L, self.artin_for(f, (1,), L))) == expected

    @pytest.mark.parametrize("L", [2, 3, 4, 6])
    def test_relation_free_cubic(self, L):
        f = P("x^3+2")
        b = trivial_basis(3)
        artin = self.artin_for(f, (1,), L)
        expected = L ** 2 * len(artin[L])
        assert len(r_set(b, identity(3), (1,), L, artin)) == expected

    @pytest.mark.parametrize("L", [2, 3, 4, 5])
    def test_against_brute_force(self, two_quadratics_basis, L):
        f = P(golden.TWO_QUADRATICS)
        sigma, k = (1, 2, 3, 4), (1, 1)
        artin = self.artin_for(f, k, L)
        allowed = [q for q in range(1, L) if math.gcd(q, L) == 1
                   and all(q in artin[m] for m in required_moduli(k, L))]
        assert r_set(two_quadratics_basis, sigma, k, L, artin) == \
            brute_r_set(two_quadratics_basis, sigma, k, L, allowed)

    def test_missing_artin(self):
        with pytest.raises(MissingArtinData):
            r_set(basis(2, (1, 1, 0)), (1, 2), (1,), 4, {})


@pytest.fixture(scope="module")
def two_quadratics_config():
    b = basis(4, *golden.TWO_QUADRATICS_ROWS)
    return SurveyConfig(P(golden.TWO_QUADRATICS), b, compute_ghat(b), 60_000, g=compute_g(b),
                        moduli=(2, 3), regions=(RegionSpec.parse(4, "x1<1/3"),),
                        chunk_width=7_000)


class TestCounters:
    def test_each_prime_counted_once(self, two_quadratics_config):
        c = run_survey(two_quadratics_config)
        expected = sum(len(ps) for ps, _ in SplitPrimeStream(two_quadratics_config.f, 0, 60_000)
                       .batches())
        assert c.total_split + len(c.failed) == expected
        assert sum(c.per_coset.values()) == c.total_split
        assert sum(c.per_coset_k.values()) == c.total_split
        for i in range(1, 5):
            assert band_cdf(c, i, two_quadratics_config.bands)[-1] == c.total_split

    @given(st.integers(0, 60_000), st.integers(0, 60_000))
    @settings(max_examples=10, deadline=None)
    def test_partition_invariance(self, two_quadratics_config, a, b):
        lo, hi = sorted((a, b))
        cfg = two_quadratics_config
        whole = survey_range(cfg, 0, cfg.X)
        parts = [survey_range(cfg, 0, lo), survey_range(cfg, lo, hi), survey_range(cfg, hi, cfg.X)]
        assert merge_all(parts) == whole
        assert parts[2].merge(parts[0]).merge(parts[1]) == parts[0].merge(parts[1].merge(parts[2]))

    def test_json_roundtrip(self, two_quadratics_config):
        c = run_survey(two_quadratics_config)
        again = SurveyCounters.from_json(json.loads(json.dumps(c.to_json())))
        assert again == c

    def test_workers_agree(self, two_quadratics_config):
        assert run_survey(replace(two_quadratics_config, workers=2)) == \
            run_survey(two_quadratics_config)


class TestCheckpoint:
    def test_resume(self, two_quadratics_config, tmp_path):
        path = str(tmp_path / "ck.json")
        cfg = replace(two_quadratics_config, checkpoint_path=path, checkpoint_every=1)
        seen = []
        full = run_survey(cfg, progress=lambda hi, X: seen.append(hi))
        assert seen[-1] == cfg.X
        assert read_checkpoint(path, cfg) == (cfg.X, full)
        # pretend the run stopped after the third chunk
        write_checkpoint(path, cfg, 21_000, survey_range(cfg, 0, 21_000))
        assert read_checkpoint(path, cfg)[0] == 21_000
        assert run_survey(cfg, resume=True) == full

    def test_mismatch(self, two_quadratics_config, tmp_path):
        path = str(tmp_path / "ck.json")
        cfg = replace(two_quadratics_config, checkpoint_path=path, checkpoint_every=100)
        run_survey(cfg)
        other = replace(cfg, moduli=(2,))
        with pytest.raises(CheckpointMismatch):
            read_checkpoint(path, other)

    def test_hash_ignores_workers(self, two_quadratics_config):
        assert replace(two_quadratics_config, workers=8).config_hash() == \
            two_quadratics_config.config_hash()


class TestReports:
    def test_conjecture_report(self, two_quadratics_config):
        cfg = two_quadratics_config
        c = run_survey(cfg)
        volumes = {rep: domain_volume(cfg.basis, rep) for rep in c.per_coset}
        report = conjecture_report(c, cfg.basis, cfg.ghat, cfg.g, volumes)
        assert report.share_sum_times_ghat == pytest.approx(len(cfg.ghat))
        assert all(row.in_g for row in report.cosets)
        assert all(abs(float(row.share) - row.predicted) < 0.02 for row in report.cosets)
        with pytest.raises(MissingVolume):
            conjecture_report(c, cfg.basis, cfg.ghat, cfg.g, {})

    def test_pattern_report_has_no_violations(self, two_quadratics_config):
        cfg = two_quadratics_config
        c = run_survey(cfg)
        f = cfg.f
        r_sets = {}
        for (rep, k) in c.per_coset_k:
            for L in cfg.moduli:
                artin = {m: artin_subgroup(f, m, 100_000) for m in required_moduli(k, L)}
                r_sets[(rep, k, L)] = r_set(cfg.basis, rep, k, L, artin)
        reports = conjecture3_report(c, r_sets)
        assert reports and all(r.violation_count == 0 for r in reports)

    def test_csv_layout(self, two_quadratics_config):
        c = run_survey(two_quadratics_config)
        text = rows_to_csv(report_rows("X=60000", c, two_quadratics_config))
        lines = text.splitlines()
        assert lines[0] == "table,m_or_X,key,empirical,predicted,diff,source"
        assert lines[1].startswith("total,X=60000,,")
