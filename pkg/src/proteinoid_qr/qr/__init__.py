"""QR symbology for numeric payloads, versions 1-10."""

from .decoder import DecodeResult, decode, decode_matrix, decode_text
from .encoder import BitStream, encode_bytes, encode_numeric
from .gf256 import rs_correct, rs_parity
from .matrix import QrMatrix, choose_mask, penalty
from .pbm import format_pbm, parse_pbm, read_pbm, write_pbm, write_png
from .tables import EcLevel, numeric_capacity

__all__ = [
    "BitStream",
    "DecodeResult",
    "EcLevel",
    "QrMatrix",
    "choose_mask",
    "decode",
    "decode_matrix",
    "decode_text",
    "encode_bytes",
    "encode_numeric",
    "format_pbm",
    "numeric_capacity",
    "parse_pbm",
    "penalty",
    "read_pbm",
    "rs_correct",
    "rs_parity",
    "write_pbm",
    "write_png",
]
