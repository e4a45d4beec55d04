"""Free-text posting annotation against the controlled vocabulary.

Greedy longest-match over normalized token n-grams (n <= 4), left to right,
ties between categories broken by Action > DomainAction > ActivityArea >
SkillKeyword. An Action pairs with the nearest following DomainAction whose
start lies at most PAIR_WINDOW tokens after the Action's last token.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ontology
from .ontology import Competency, Lexicon, Mission
from .textnorm import fold, token_spans

MAX_NGRAM = 4
PAIR_WINDOW = 6

_CATEGORY_PRIORITY = ("Action", "DomainAction", "ActivityArea", "SkillKeyword")


class LexiconInvalid(ValueError):
    def __init__(self, report):
        super().__init__(f"lexicon invalid: {len(report)} violation(s)")
        self.report = report


@dataclass
class Token:
    surface: str
    normalized: str
    byteOffset: int
    byteEnd: int


@dataclass
class TokenStream:
    tokens: list[Token] = field(default_factory=list)


@dataclass(frozen=True)
class Evidence:
    conceptId: str
    start: int  # byte offsets into the original text
    end: int


@dataclass
class AnnotationResult:
    competencies: list[Competency] = field(default_factory=list)
    activityAreas: list[str] = field(default_factory=list)
    unmatchedKeywords: list[str] = field(default_factory=list)
    evidence: list[Evidence] = field(default_factory=list)


def tokenize(text: str) -> TokenStream:
    """Split on whitespace/punctuation (hyphens kept), fold case and accents."""
    tokens = []
    char_pos = 0
    byte_pos = 0
    for surface, start, end in token_spans(text):
        byte_pos += len(text[char_pos:start].encode("utf-8"))
        byte_start = byte_pos
        byte_pos += len(text[start:end].encode("utf-8"))
        char_pos = end
        tokens.append(Token(surface=surface, normalized=fold(surface),
                            byteOffset=byte_start, byteEnd=byte_pos))
    return TokenStream(tokens=tokens)


@dataclass
class _Match:
    conceptId: str
    category: str
    startTok: int
    endTok: int  # inclusive


def _scan(stream: TokenStream, lexicon: Lexicon) -> list[_Match]:
    index = lexicon.index()
    tokens = stream.tokens
    matches: list[_Match] = []
    i = 0
    while i < len(tokens):
        hit = None
        for n in range(min(MAX_NGRAM, len(tokens) - i), 0, -1):
            phrase = " ".join(t.normalized for t in tokens[i:i + n])
            for cat in _CATEGORY_PRIORITY:
                cid = index.get((cat, phrase))
                if cid is not None:
                    hit = _Match(conceptId=cid, category=cat,
                                 startTok=i, endTok=i + n - 1)
                    break
            if hit:
                break
        if hit:
            matches.append(hit)
            i = hit.endTok + 1
        else:
            i += 1
    return matches


def extract_concepts(stream: TokenStream, lexicon: Lexicon) -> AnnotationResult:
    """Match concepts and pair Actions with following DomainActions."""
    tokens = stream.tokens
    matches = _scan(stream, lexicon)

    result = AnnotationResult()
    for m in matches:
        result.evidence.append(Evidence(conceptId=m.conceptId,
                                        start=tokens[m.startTok].byteOffset,
                                        end=tokens[m.endTok].byteEnd))

    domains = [m for m in matches if m.category == "DomainAction"]
    consumed: set[int] = set()
    paired_actions: set[int] = set()
    for ai, act in enumerate(m for m in matches if m.category == "Action"):
        for di, dom in enumerate(domains):
            if di in consumed:
                continue
            gap = dom.startTok - act.endTok
            if 0 < gap <= PAIR_WINDOW:
                result.competencies.append(
                    Competency(action=act.conceptId, domainAction=dom.conceptId))
                consumed.add(di)
                paired_actions.add(ai)
                break

    unpaired: list[str] = []
    for ai, act in enumerate(m for m in matches if m.category == "Action"):
        if ai not in paired_actions:
            unpaired.append(" ".join(t.surface
                                     for t in tokens[act.startTok:act.endTok + 1]))
    for di, dom in enumerate(domains):
        if di not in consumed:
            unpaired.append(" ".join(t.surface
                                     for t in tokens[dom.startTok:dom.endTok + 1]))

    for m in matches:
        if m.category == "ActivityArea" and m.conceptId not in result.activityAreas:
            result.activityAreas.append(m.conceptId)

    covered = {ti for m in matches for ti in range(m.startTok, m.endTok + 1)}
    leftover = [t.surface for ti, t in enumerate(tokens) if ti not in covered]
    seen: set[str] = set()
    for surface in unpaired + leftover:
        if surface not in seen:
            seen.add(surface)
            result.unmatchedKeywords.append(surface)
    return result


def _lexicon_report(lexicon: Lexicon):
    return ontology.validate_store(ontology.InstanceStore(lexicon=lexicon))


def annotate_mission(rawText: str, lexicon: Lexicon, missionDraft: Mission) -> Mission:
    """Fill competencies/activityAreas from text, keeping manual annotations."""
    report = _lexicon_report(lexicon)
    if report:
        raise LexiconInvalid(report)
    result = extract_concepts(tokenize(rawText), lexicon)

    competencies = list(missionDraft.competencies)
    for comp in result.competencies:
        if comp not in competencies:
            competencies.append(comp)
    areas = list(missionDraft.activityAreas)
    for area in result.activityAreas:
        if area not in areas:
            areas.append(area)

    mission = ontology.Mission(**{**missionDraft.__dict__})
    mission.competencies = competencies
    mission.activityAreas = areas
    mission.rawText = rawText
    return mission


def log_entry(mission_id: str, result: AnnotationResult) -> dict:
    """One JSON-lines record for the annotation log."""
    return {
        "missionId": mission_id,
        "concepts": sorted({c.action for c in result.competencies}
                           | {c.domainAction for c in result.competencies}
                           | set(result.activityAreas)),
        "unmatched": list(result.unmatchedKeywords),
        "evidence": [{"conceptId": e.conceptId, "start": e.start, "end": e.end}
                     for e in result.evidence],
    }
