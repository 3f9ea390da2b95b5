from typing import Optional

from fastapi import APIRouter, File, Form, Response, UploadFile

from app.api.helpers import codec_http_error, read_upload
from app.config import settings
from app.enums import DecoderStrategy, PayloadFormat
from app.models.code import FrequencyTable
from app.schemas.codec import InspectResponse
from app.services.code_service import build_code
from app.services.codec_service import decode_stream, encode_stream, inspect_stream
from app.services.corpus_service import read_tokens, write_tokens

router = APIRouter(prefix="/codec", tags=["codec"])

OCTET_STREAM = "application/octet-stream"


@router.post("/encode")
async def encode_route(
    file: UploadFile = File(...),
    format: PayloadFormat = Form(PayloadFormat.BYTES),
):
    """Compress an uploaded token file into a CHC1 container."""
    data = await read_upload(file)
    try:
        symbols = read_tokens(data, format)
        code = build_code(FrequencyTable.from_symbols(symbols))
        blob = encode_stream(code, symbols)
    except ValueError as e:
        raise codec_http_error(e)
    return Response(
        content=blob,
        media_type=OCTET_STREAM,
        headers={
            "X-Symbols": str(len(symbols)),
            "X-Sigma": str(code.sigma),
            "X-Max-Len": str(code.max_len),
        },
    )


@router.post("/decode")
async def decode_route(
    file: UploadFile = File(...),
    decoder: Optional[DecoderStrategy] = Form(None),
    format: PayloadFormat = Form(PayloadFormat.BYTES),
):
    """Decompress a CHC1 container back into the token file."""
    data = await read_upload(file)
    try:
        symbols = decode_stream(data, decoder or settings.default_decoder)
        out = write_tokens(symbols, format)
    except ValueError as e:
        raise codec_http_error(e)
    return Response(content=out, media_type=OCTET_STREAM, headers={"X-Symbols": str(len(symbols))})


@router.post("/inspect", response_model=InspectResponse)
async def inspect_route(file: UploadFile = File(...)):
    """Header, dictionary space audit and code checks of a CHC1 container."""
    data = await read_upload(file)
    try:
        return inspect_stream(data)
    except ValueError as e:
        raise codec_http_error(e)
