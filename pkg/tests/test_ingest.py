from datetime import date

import numpy as np
import pytest

from robustts.errors import DataError
from robustts.ingest import ingest_counts, ingest_factors, ingest_prices, ingest_rates

COUNTS_HEADER = "Province/State,Country/Region,Lat,Long,1/22/20,1/23/20"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


class TestIngestCounts:
    def test_province_rows_summed(self, tmp_path):
        p = write(
            tmp_path,
            "c.csv",
            f"{COUNTS_HEADER}\nA,Xland,0,0,1,2\nB,Xland,0,0,3,4\n",
        )
        out = ingest_counts(p)
        assert np.array_equal(out["Xland"].values, [4, 6])
        assert out["Xland"].dates == (date(2020, 1, 22), date(2020, 1, 23))

    def test_single_row_pass_through(self, tmp_path):
        p = write(tmp_path, "c.csv", f"{COUNTS_HEADER}\n,Solo,1,1,5,9\n")
        assert np.array_equal(ingest_counts(p)["Solo"].values, [5, 9])

    def test_date_columns_out_of_order(self, tmp_path):
        header = "Province/State,Country/Region,Lat,Long,1/23/20,1/22/20"
        p = write(tmp_path, "c.csv", f"{header}\n,X,0,0,1,2\n")
        with pytest.raises(DataError, match="out of order"):
            ingest_counts(p)

    def test_malformed_header(self, tmp_path):
        p = write(tmp_path, "c.csv", "State,Country,Lat,Long,1/22/20\n,X,0,0,1\n")
        with pytest.raises(DataError, match="malformed header"):
            ingest_counts(p)

    def test_unparseable_number_names_location(self, tmp_path):
        p = write(tmp_path, "c.csv", f"{COUNTS_HEADER}\n,X,0,0,1,oops\n")
        with pytest.raises(DataError) as err:
            ingest_counts(p)
        msg = str(err.value)
        assert "line 2" in msg and "1/23/20" in msg and "oops" in msg

    def test_negative_count_rejected(self, tmp_path):
        p = write(tmp_path, "c.csv", f"{COUNTS_HEADER}\n,X,0,0,1,-2\n")
        with pytest.raises(DataError, match="negative cumulative"):
            ingest_counts(p)

    def test_reproducible_from_same_bytes(self, data_dir):
        a = ingest_counts(data_dir / "counts_infections.csv")
        b = ingest_counts(data_dir / "counts_infections.csv")
        assert list(a) == list(b)
        for name in a:
            assert a[name].dates == b[name].dates
            assert np.array_equal(a[name].values, b[name].values)

    def test_countries_sorted(self, data_dir):
        names = list(ingest_counts(data_dir / "counts_infections.csv"))
        assert names == sorted(names)


class TestIngestPrices:
    HEADER = "Date,Open,High,Low,Close,Adj Close,Volume"

    def test_reads_adj_close(self, tmp_path):
        p = write(
            tmp_path,
            "p.csv",
            f"{self.HEADER}\n2020-01-02,1,1,1,1,100.5,10\n2020-01-03,1,1,1,1,101.25,10\n",
        )
        s = ingest_prices(p)
        assert np.array_equal(s.values, [100.5, 101.25])

    def test_null_rows_skipped(self, tmp_path):
        p = write(
            tmp_path,
            "p.csv",
            f"{self.HEADER}\n2020-01-02,1,1,1,1,100,10\n"
            "2020-01-03,null,null,null,null,null,null\n"
            "2020-01-06,1,1,1,1,,10\n"
            "2020-01-07,1,1,1,1,104,10\n",
        )
        s = ingest_prices(p)
        assert np.array_equal(s.values, [100, 104])
        assert s.dates == (date(2020, 1, 2), date(2020, 1, 7))

    def test_non_monotone_dates(self, tmp_path):
        p = write(
            tmp_path,
            "p.csv",
            f"{self.HEADER}\n2020-01-03,1,1,1,1,100,10\n2020-01-02,1,1,1,1,101,10\n",
        )
        with pytest.raises(DataError, match="out of order"):
            ingest_prices(p)

    def test_header_checked(self, tmp_path):
        p = write(tmp_path, "p.csv", "Date,Close\n2020-01-02,3\n")
        with pytest.raises(DataError, match="malformed header"):
            ingest_prices(p)


class TestIngestRates:
    def test_basic(self, tmp_path):
        p = write(tmp_path, "r.csv", "date,rate_pct\n2020-01-02,1.50\n2020-03-16,0.25\n")
        s = ingest_rates(p)
        assert np.array_equal(s.values, [1.5, 0.25])

    def test_bad_number_has_context(self, tmp_path):
        p = write(tmp_path, "r.csv", "date,rate_pct\n2020-01-02,zzz\n")
        with pytest.raises(DataError) as err:
            ingest_rates(p)
        assert "rate_pct" in str(err.value) and "line 2" in str(err.value)


class TestIngestFactors:
    def test_percent_to_fraction(self, tmp_path):
        p = write(
            tmp_path,
            "f.csv",
            "date,Mkt.RF,SMB,HML,MOM,RMW,CMA,RF\n2020-01-02,1.0,0.5,-0.25,0,0,0,0.006\n",
        )
        panel = ingest_factors(p)
        assert panel.columns["Mkt.RF"][0] == pytest.approx(0.01)
        assert panel.columns["HML"][0] == pytest.approx(-0.0025)
        assert panel.columns["RF"][0] == pytest.approx(0.00006)

    def test_header_exact(self, tmp_path):
        p = write(tmp_path, "f.csv", "date,MktRF,SMB\n2020-01-02,1,1\n")
        with pytest.raises(DataError, match="malformed header"):
            ingest_factors(p)

    def test_fixture_panel_loads(self, data_dir):
        panel = ingest_factors(data_dir / "factors.csv")
        assert set(panel.columns) == {"Mkt.RF", "SMB", "HML", "MOM", "RMW", "CMA", "RF"}
        assert len(panel.dates) == len(panel.columns["RF"])
