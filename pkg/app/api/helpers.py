from fastapi import HTTPException, UploadFile, status

from app.config import settings
from app.exceptions import CodecError


async def read_upload(file: UploadFile) -> bytes:
    """Whole upload, refusing anything above the configured cap."""
    data = await file.read(settings.max_upload_bytes + 1)
    if len(data) > settings.max_upload_bytes:
        raise HTTPException(
            status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE,
            detail=f"Upload exceeds {settings.max_upload_bytes} bytes",
        )
    return data


def codec_http_error(exc: ValueError) -> HTTPException:
    headers = {"X-Error-Code": exc.code.value} if isinstance(exc, CodecError) else None
    return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc), headers=headers)
