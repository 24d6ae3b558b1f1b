import re


class Regex_patterns:
    # Word text
    WORD_TOKEN = re.compile(r"([abcdx])([0-2])")
    UNIT_WORD = re.compile(r"^\s*1\s*$")

    # Morse tangle tokens e.g. xi_1, isigma_3
    MORSE_TOKEN = re.compile(r"^(xi|eta|sigma|isigma|tau)_([1-9][0-9]*)$")

    # Derivation scripts
    SCRIPT_HEADER = re.compile(r"^script\s+(\S+)$")
    RULES_HEADER = re.compile(r"^rules\s+(\S+)$")
    CITATION = re.compile(r"^\((\d+'?)\)(?:\s+w=\[([^\]]*)\]\s+i=([0-2]))?$")
    CITATION_SPLIT = re.compile(r",(?![^\[]*\])")
