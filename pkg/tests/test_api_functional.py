import pytest

from app.config import settings


@pytest.mark.functional
def test_root_and_health(client):
    r = client.get("/")
    assert r.status_code == 200, r.text
    assert r.json()["message"] == "chcodec API"

    r = client.get("/health")
    assert r.status_code == 200, r.text
    assert r.json()["status"] == "healthy"


@pytest.mark.functional
def test_encode_decode_round_trip(client):
    payload = b"abracadabra" * 20

    r = client.post("/codec/encode", files={"file": ("f.txt", payload)})
    assert r.status_code == 200, r.text
    assert r.headers["X-Symbols"] == str(len(payload))
    assert r.headers["X-Sigma"] == "5"
    blob = r.content
    assert blob[:4] == b"CHC1"

    for decoder in ("tree", "bin", "exp", "part"):
        r = client.post("/codec/decode", files={"file": ("f.chc", blob)}, data={"decoder": decoder})
        assert r.status_code == 200, r.text
        assert r.content == payload


@pytest.mark.functional
def test_inspect(client):
    blob = client.post("/codec/encode", files={"file": ("f.txt", b"aab")}).content

    r = client.post("/codec/inspect", files={"file": ("f.chc", blob)})
    assert r.status_code == 200, r.text
    j = r.json()
    assert j["header"]["n"] == 3
    assert j["header"]["sigma_present"] == 2
    assert j["header"]["max_len"] == 1
    assert all(check["passed"] for check in j["validation"]["checks"])


@pytest.mark.functional
def test_decode_bad_magic(client):
    r = client.post("/codec/decode", files={"file": ("f.chc", b"NOPE" + bytes(20))})
    assert r.status_code == 400, r.text
    assert r.headers["X-Error-Code"] == "BAD_MAGIC"


@pytest.mark.functional
def test_decode_unknown_strategy(client):
    blob = client.post("/codec/encode", files={"file": ("f.txt", b"aab")}).content
    r = client.post("/codec/decode", files={"file": ("f.chc", blob)}, data={"decoder": "bogus"})
    assert r.status_code == 422, r.text


@pytest.mark.functional
def test_upload_cap(client, monkeypatch):
    monkeypatch.setattr(settings, "max_upload_bytes", 16)
    r = client.post("/codec/encode", files={"file": ("f.txt", b"x" * 17)})
    assert r.status_code == 413, r.text
