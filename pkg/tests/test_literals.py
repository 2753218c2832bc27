"""The text literal format: round-trips, canonical bytes, diagnostics."""

import random
from fractions import Fraction

import pytest

from supercircle.grassmann import FLOAT64, RATIONAL, GrassmannAlgebra
from supercircle.superjet import ORDER_INF, SuperJet
from supercircle.contactmap import MapGerm, SuperPoint
from supercircle.ospgroup import dilation, translation
from supercircle.cartan import ContactField
from supercircle import literals as lit
from supercircle import samplers as sm


def terms_of(g):
    return dict(g.terms)


class TestRoundTrip:
    def setup_method(self):
        self.alg = GrassmannAlgebra(5, RATIONAL)
        self.rng = random.Random(3)

    def test_grassmann_bit_exact(self):
        g = (self.alg.gen(0) * self.alg.gen(2) * Fraction(3, 7)
             + self.alg.scalar(Fraction(-2, 9)))
        back = lit.loads(lit.dumps(g))
        assert terms_of(back) == terms_of(g)
        assert lit.dumps(back) == lit.dumps(g)

    def test_jet(self):
        jet = sm.sample_k1_germ(self.rng, self.alg, Fraction(1, 2), 6).phi
        back = lit.loads(lit.dumps(jet))
        assert back.base_x == jet.base_x
        assert back.order == jet.order
        assert back.terms.keys() == jet.terms.keys()
        for key in jet.terms:
            assert terms_of(back.terms[key]) == terms_of(jet.terms[key])

    def test_exact_jet_order_survives(self):
        x = SuperJet.coordinate(self.alg, 1, Fraction(1, 3))
        back = lit.loads(lit.dumps(x))
        assert back.order == ORDER_INF

    def test_point_and_points(self):
        p = sm.sample_point(self.rng, self.alg, 2, body=Fraction(1, 4),
                            soul=True)
        back = lit.loads(lit.dumps(p))
        assert terms_of(back.x) == terms_of(p.x)
        pts = sm.sample_points(self.rng, self.alg, 1, 4)
        back = lit.loads(lit.dumps(pts))
        assert [q.x.body for q in back] == [q.x.body for q in pts]

    def test_germ_stays_contact(self):
        germ = sm.sample_k1_germ(self.rng, self.alg, 0, 6)
        back = lit.loads(lit.dumps(germ))
        assert back.is_contact()
        assert lit.dumps(back) == lit.dumps(germ)

    def test_matrix(self):
        m = (translation(self.alg, 2, Fraction(1, 2),
                         (self.alg.gen(0) * Fraction(1, 3), self.alg.gen(1)))
             @ dilation(self.alg, 2, Fraction(3, 2)))
        back = lit.loads(lit.dumps(m))
        assert back.is_orthosymplectic()
        assert lit.dumps(back) == lit.dumps(m)

    def test_field(self):
        f = sm.sample_hamiltonian(self.rng, self.alg, 1, Fraction(1, 2), 6)
        X = ContactField.from_hamiltonian(f)
        back = lit.loads(lit.dumps(X))
        assert isinstance(back, ContactField)
        assert lit.dumps(back) == lit.dumps(X)

    def test_float_backend(self):
        alg = GrassmannAlgebra(3, FLOAT64)
        g = alg.gen(0) * 0.1 + alg.scalar(2.5)
        back = lit.loads(lit.dumps(g))
        assert terms_of(back) == terms_of(g)

    def test_files(self, tmp_path):
        germ = sm.sample_k1_germ(self.rng, self.alg, 0, 6)
        path = tmp_path / "germ.json"
        lit.write_path(str(path), germ)
        back = lit.read_path(str(path))
        assert lit.dumps(back) == lit.dumps(germ)

    def test_scalar_text(self):
        assert lit.scalar_text(self.alg.scalar(Fraction(4, 3))) == "4/3"
        assert lit.scalar_text(self.alg.scalar(7)) == "7"
        assert lit.scalar_text(self.alg.gen(0)) is None


def err(text):
    with pytest.raises(lit.LiteralError) as info:
        lit.loads(text)
    return str(info.value)


class TestDiagnostics:
    def test_bad_json_names_line_and_column(self):
        msg = err("{ nope }")
        assert "line 1" in msg and "column" in msg

    def test_unknown_kind(self):
        msg = err('{"kind": "spinor", "field": "rational", "gens": 2}')
        assert "kind" in msg

    def test_missing_key(self):
        msg = err('{"kind": "grassmann", "field": "rational"}')
        assert "gens" in msg

    def test_bad_field(self):
        msg = err('{"kind": "grassmann", "field": "f32", "gens": 2, '
                  '"terms": []}')
        assert "field" in msg

    def test_float_rejected_in_rational_mode(self):
        msg = err('{"kind": "grassmann", "field": "rational", "gens": 2, '
                  '"terms": [{"mask": [], "value": 0.5}]}')
        assert "terms[0].value" in msg

    def test_mask_out_of_range(self):
        msg = err('{"kind": "grassmann", "field": "rational", "gens": 2, '
                  '"terms": [{"mask": [5], "value": "1"}]}')
        assert "terms[0].mask[0]" in msg

    def test_mask_must_ascend(self):
        msg = err('{"kind": "grassmann", "field": "rational", "gens": 3, '
                  '"terms": [{"mask": [2, 1], "value": "1"}]}')
        assert "ascending" in msg

    def test_duplicate_mask(self):
        msg = err('{"kind": "grassmann", "field": "rational", "gens": 3, '
                  '"terms": [{"mask": [1], "value": "1"},'
                  ' {"mask": [1], "value": "2"}]}')
        assert "duplicate" in msg

    def test_germ_psi_count(self):
        alg = GrassmannAlgebra(3, RATIONAL)
        germ = sm.sample_k1_germ(random.Random(0), alg, 0, 6)
        doc = lit.to_document(germ)
        doc["psis"] = []
        with pytest.raises(lit.LiteralError) as info:
            lit.from_document(doc)
        assert "psis" in str(info.value)

    def test_germ_base_consistency(self):
        alg = GrassmannAlgebra(3, RATIONAL)
        germ = sm.sample_k1_germ(random.Random(0), alg, 0, 6)
        doc = lit.to_document(germ)
        doc["base_x"] = "1/2"
        with pytest.raises(lit.LiteralError) as info:
            lit.from_document(doc)
        assert "based at" in str(info.value)

    def test_matrix_row_length(self):
        alg = GrassmannAlgebra(3, RATIONAL)
        doc = lit.to_document(dilation(alg, 2, Fraction(3, 2)))
        doc["blocks"]["gamma"] = doc["blocks"]["gamma"][:1]
        with pytest.raises(lit.LiteralError) as info:
            lit.from_document(doc)
        assert "gamma" in str(info.value)

    def test_missing_file_names_it(self):
        with pytest.raises(lit.LiteralError) as info:
            lit.read_path("/nonexistent/thing.json")
        assert "thing.json" in str(info.value)

    def test_file_error_names_file(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{"kind": "grassmann", "field": "rational"}')
        with pytest.raises(lit.LiteralError) as info:
            lit.read_path(str(p))
        assert "bad.json" in str(info.value)

    def test_booleans_are_not_numbers(self):
        msg = err('{"kind": "grassmann", "field": "rational", "gens": 2, '
                  '"terms": [{"mask": [], "value": true}]}')
        assert "terms[0].value" in msg
