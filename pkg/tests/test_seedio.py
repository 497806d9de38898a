import json

import pytest

from clusterpoisson.corpus import g25_seed, singular_seed
from clusterpoisson.seedio import (
    SeedFileError,
    parse_seed_dict,
    parse_seed_file,
    render_seed_file,
    seed_to_dict,
)


def g25_file_text():
    ps = g25_seed()
    return render_seed_file(ps.seed, ps.lam)


class TestRoundTrip:
    def test_parse_render_is_identity_on_text(self):
        text = g25_file_text()
        sf = parse_seed_file(text)
        assert render_seed_file(sf.seed, sf.lam) == text

    def test_parse_render_round_trip_on_seed(self):
        ps = singular_seed()
        sf = parse_seed_file(render_seed_file(ps.seed, ps.lam))
        assert sf.seed.b_matrix == ps.seed.b_matrix
        assert sf.seed.labels == ps.seed.labels
        assert sf.seed.expansions == ps.seed.expansions
        assert sf.lam == ps.lam

    def test_lambda_is_optional(self):
        ps = singular_seed()
        sf = parse_seed_file(render_seed_file(ps.seed))
        assert sf.lam is None

    def test_key_order_is_canonical(self):
        data = json.loads(g25_file_text())
        assert list(data) == ["schema", "n", "m", "labels", "B", "Lambda"]
        assert data["schema"] == 1


class TestValidation:
    def base(self):
        return seed_to_dict(singular_seed().seed, singular_seed().lam)

    def test_rejects_wrong_schema(self):
        data = self.base()
        data["schema"] = 2
        with pytest.raises(SeedFileError):
            parse_seed_dict(data)

    def test_rejects_missing_fields(self):
        for key in ("n", "m", "labels", "B"):
            data = self.base()
            del data[key]
            with pytest.raises(SeedFileError):
                parse_seed_dict(data)

    def test_rejects_bad_dimensions(self):
        data = self.base()
        data["B"] = [[0, 2]]
        with pytest.raises(SeedFileError):
            parse_seed_dict(data)
        data = self.base()
        data["Lambda"] = [[0]]
        with pytest.raises(SeedFileError):
            parse_seed_dict(data)

    def test_rejects_non_integer_entries(self):
        data = self.base()
        data["B"] = [[0, 2.5, -2]]
        with pytest.raises(SeedFileError):
            parse_seed_dict(data)
        data = self.base()
        data["B"] = [[0, True, -2]]
        with pytest.raises(SeedFileError):
            parse_seed_dict(data)

    def test_rejects_non_symmetrizable_principal_block(self):
        data = {
            "schema": 1,
            "n": 2,
            "m": 2,
            "labels": ["x1", "x2"],
            "B": [[0, 1], [1, 0]],
        }
        with pytest.raises(SeedFileError):
            parse_seed_dict(data)

    def test_rejects_invalid_json(self):
        with pytest.raises(SeedFileError):
            parse_seed_file("{not json")

    def test_non_skew_lambda_is_accepted_for_diagnosis(self):
        ps = g25_seed()
        sf = parse_seed_file(render_seed_file(ps.seed, ps.lam))
        assert sf.lam.skew_symmetry_violations()
