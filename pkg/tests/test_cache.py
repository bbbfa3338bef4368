from spectral_gluing.cache import CACHE_ENV, ReportCache, cache_key, default_cache_dir


def test_key_is_deterministic_and_order_free():
    first = cache_key("glue", {"a": 1, "b": [1, 2]}, "1.0.0")
    second = cache_key("glue", {"b": [1, 2], "a": 1}, "1.0.0")
    assert first == second
    assert len(first) == 64


def test_key_depends_on_every_input():
    base = cache_key("glue", {"a": 1}, "1.0.0")
    assert cache_key("zeta", {"a": 1}, "1.0.0") != base
    assert cache_key("glue", {"a": 2}, "1.0.0") != base
    assert cache_key("glue", {"a": 1}, "1.0.1") != base


def test_store_then_lookup(tmp_path):
    cache = ReportCache("1.0.0", tmp_path)
    key = cache_key("zeta", {}, "1.0.0")
    assert cache.lookup(key) is None

    cache.store(key, {"rows": [], "passed": True})
    entry = cache.lookup(key)
    assert entry.value == {"rows": [], "passed": True}
    assert entry.version == "1.0.0"
    assert not list(tmp_path.glob("*.tmp"))


def test_entry_from_other_version_is_discarded(tmp_path):
    key = cache_key("zeta", {}, "1.0.0")
    ReportCache("0.9.0", tmp_path).store(key, {"rows": []})
    assert ReportCache("1.0.0", tmp_path).lookup(key) is None
    assert not (tmp_path / f"{key}.json").exists()


def test_corrupt_entry_is_discarded(tmp_path):
    cache = ReportCache("1.0.0", tmp_path)
    key = cache_key("zeta", {}, "1.0.0")
    cache.path_for(key).write_text("{not json", encoding="utf-8")
    assert cache.lookup(key) is None
    assert not cache.path_for(key).exists()


def test_directory_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert default_cache_dir() == tmp_path
    assert ReportCache("1.0.0").directory == tmp_path
