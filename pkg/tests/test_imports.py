# Basic smoke test to ensure weakschmidt can be imported and the WeakSchmidt factory is available

def test_imports():
    import weakschmidt
    # The WeakSchmidt factory function should exist and be callable
    assert hasattr(weakschmidt, 'WeakSchmidt'), "weakschmidt.WeakSchmidt should be present"
    from weakschmidt import WeakSchmidt
    assert callable(WeakSchmidt), "WeakSchmidt should be callable"


def test_factory_builds_analyzer():
    from weakschmidt import WeakSchmidt, SchmidtAnalyzer
    analyzer = WeakSchmidt(tol=1e-7, seed=3, trace=False)
    assert isinstance(analyzer, SchmidtAnalyzer)
    assert analyzer.logger is None
    assert analyzer.config.to_dict() == {"tol": 1e-7, "seed": 3, "output": "json"}


def test_cli_entrypoint_importable():
    from weakschmidt.cli import main
    assert callable(main)


def test_analyzer_keeps_history_and_last_report():
    from weakschmidt import WeakSchmidt
    analyzer = WeakSchmidt(trace=False)
    assert analyzer.get_last_report() is None
    assert analyzer.get_history() == []

    report = analyzer.hadamard_verify([[1, 1], [1, -1]])
    assert analyzer.get_last_report() is report
    history = analyzer.get_history()
    assert [event["op"] for event in history] == ["is_hadamard"]
    assert history[0]["payload"]["verdict"] is True

    # the accessor hands out a copy
    history.append({"op": "extra"})
    assert len(analyzer.get_history()) == 1
