import json

import numpy as np
import pytest
from matplotlib.image import imread

from slif_figs import FigureError, parse_spec, render
from slif_figs.cli import main


def render_spec(tmp_path, **kw):
    doc = {"output": str(tmp_path / kw.pop("output", "fig.png")), **kw}
    spec = parse_spec(doc)
    return render(spec)


class TestTraces:
    def test_four_trace_figure(self, tmp_path, traces_dir):
        out = render_spec(
            tmp_path,
            kind="traces",
            inputs=[str(traces_dir / f"{n}.csv")
                    for n in ("single", "pair_short", "pair_favorite", "pair_long")],
            threshold_mV=-52.669,
            title="membrane response to spike pairs",
        )
        img = imread(out)
        assert img.shape[0] > 100 and img.shape[1] > 100
        # four distinct curve colours plus axes/threshold ink
        colored = img[..., :3][(img[..., :3] < 0.9).any(axis=-1)]
        assert len(np.unique((colored * 16).astype(int), axis=0)) > 4

    def test_rerender_is_byte_identical(self, tmp_path, traces_dir):
        inputs = [str(traces_dir / "single.csv"), str(traces_dir / "pair_long.csv")]
        before = [open(p, "rb").read() for p in inputs]
        a = render_spec(tmp_path, kind="traces", inputs=inputs, output="a.png")
        b = render_spec(tmp_path, kind="traces", inputs=inputs, output="b.png")
        with open(a, "rb") as fa, open(b, "rb") as fb:
            assert fa.read() == fb.read()
        assert [open(p, "rb").read() for p in inputs] == before


class TestResponse:
    def test_overlay_with_dashed_threshold(self, tmp_path, response_dir):
        metrics = json.loads((response_dir / "metrics.json").read_text())
        out = render_spec(
            tmp_path,
            kind="response",
            inputs=[str(response_dir / "response.csv"),
                    str(response_dir / "response_lif.csv")],
            labels=["saturating synapse", "additive input"],
            threshold_mV=12.33,
        )
        img = imread(out)
        assert img.shape[0] > 100
        assert metrics["favorite_ist_ms"] > 0  # bundle metadata is intact

    def test_threshold_line_changes_the_image(self, tmp_path, response_dir):
        inputs = [str(response_dir / "response.csv")]
        a = render_spec(tmp_path, kind="response", inputs=inputs, output="a.png")
        b = render_spec(tmp_path, kind="response", inputs=inputs, output="b.png",
                        threshold_mV=12.33)
        with open(a, "rb") as fa, open(b, "rb") as fb:
            assert fa.read() != fb.read()


class TestHeatmap:
    def test_reference_map(self, tmp_path, map_dir):
        out = render_spec(
            tmp_path,
            kind="heatmap",
            inputs=[str(map_dir / "sweep.csv")],
            value_column="margin_mV",
            x_label="c_m (pF)",
            y_label="g_l (nS)",
        )
        img = imread(out)
        assert img.shape[0] > 100

    def test_error_cells_stay_blank(self, tmp_path, sweep_3x3):
        """The error cell must come out blank/hatched, not filled with a
        value interpolated from its neighbours."""
        with_err = render_spec(
            tmp_path, kind="heatmap", inputs=[str(sweep_3x3)], output="err.png",
        )
        patched = sweep_3x3.read_text().replace(
            "nan,nan,nan,nan,error:ValueError: blew up", "12.0,13.0,6.0,3.0,"
        )
        fixed_csv = sweep_3x3.parent / "fixed.csv"
        fixed_csv.write_text(patched)
        without = render_spec(
            tmp_path, kind="heatmap", inputs=[str(fixed_csv)], output="ok.png",
        )
        img_err = imread(with_err)
        img_ok = imread(without)
        white_err = float((img_err[..., :3] > 0.97).all(axis=-1).mean())
        white_ok = float((img_ok[..., :3] > 0.97).all(axis=-1).mean())
        # the blanked cell leaves clearly more white area behind
        assert white_err > white_ok + 0.01

    def test_rerender_is_byte_identical(self, tmp_path, map_dir):
        inputs = [str(map_dir / "sweep.csv")]
        a = render_spec(tmp_path, kind="heatmap", inputs=inputs, output="a.png")
        b = render_spec(tmp_path, kind="heatmap", inputs=inputs, output="b.png")
        with open(a, "rb") as fa, open(b, "rb") as fb:
            assert fa.read() == fb.read()

    def test_empty_csv_is_rejected(self, tmp_path):
        p = tmp_path / "sweep.csv"
        p.write_text(
            "axis1,axis2,favorite_ist_ms,max_amplitude_mV,margin_mV,timewidth_ms,flags\n"
        )
        with pytest.raises(FigureError, match="no data rows"):
            render_spec(tmp_path, kind="heatmap", inputs=[str(p)])


class TestCli:
    def test_renders_from_a_spec_file(self, tmp_path, response_dir, capsys):
        spec = tmp_path / "fig.json"
        spec.write_text(json.dumps({
            "kind": "response",
            "inputs": [str(response_dir / "response.csv")],
            "output": "fig.png",
        }))
        assert main(["--spec", str(spec)]) == 0
        assert (tmp_path / "fig.png").exists()
        assert "fig.png" in capsys.readouterr().out

    def test_schema_mismatch_exits_2_naming_columns(self, tmp_path, traces_dir,
                                                    capsys):
        spec = tmp_path / "fig.json"
        spec.write_text(json.dumps({
            "kind": "response",
            "inputs": [str(traces_dir / "single.csv")],  # wrong schema on purpose
            "output": "fig.png",
        }))
        assert main(["--spec", str(spec)]) == 2
        err = capsys.readouterr().err
        assert "figure error" in err
        assert "ist_ms" in err and "amplitude_mV" in err

    def test_missing_input_exits_2(self, tmp_path, capsys):
        spec = tmp_path / "fig.json"
        spec.write_text(json.dumps({
            "kind": "traces", "inputs": ["absent.csv"], "output": "fig.png",
        }))
        assert main(["--spec", str(spec)]) == 2
        assert "not found" in capsys.readouterr().err
