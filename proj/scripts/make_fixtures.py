#!/usr/bin/env python3
"""Regenerates the committed test fixtures under tests/fixtures.

Run from the repository root: python3 scripts/make_fixtures.py
Output is deterministic; rerunning must leave `git status` clean.
"""
import csv
import io
import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

KNIFE = "他的话像一把刀"
MOTHER = "她像她妈妈"
APPLE = "这个苹果像那个苹果一样红"
DEEP = "这个道理很深"
WANRU = "她的笑声宛如银铃"
MONEY = "时间就是金钱"
MIXED = "这场胜利让人又喜又悲"

# Marker-free building blocks. None contains a character sequence from data/markers.txt.
SUBJECTS = ["我们", "老师", "孩子们", "这座城市", "那条河", "那本书", "工人们", "我的朋友", "邻居", "学生们"]
PREDICATES = ["很安静", "慢慢地走了", "变得更好了", "在唱歌", "需要帮助",
              "已经回来了", "非常重要", "看起来很累", "正在等待", "开始工作了"]
TIMES = ["今天", "昨天", "明天", "早上", "晚上"]


def rule(template_id, slots, response, render=False):
    entry = {"template_id": template_id, "slots": slots, "response": response}
    if render:
        entry["render_slots"] = True
    return entry


def domain(sentence, expression, label):
    return rule("domain_label", {"sentence": sentence, "expression": expression}, f"domain: {label}")


def comparison(sentence, marker, tenor, vehicle):
    return rule("comparison_extraction", {"sentence": sentence, "marker": marker},
                f"tenor: {tenor}\nvehicle: {vehicle}")


# (sentence, marker, tenor, tenor domain, vehicle, vehicle domain); all cross-domain.
SIMILES = [
    (KNIFE, "像", "他的话", "ABSTRACT", "一把刀", "OBJECT"),
    ("她的眼睛像星星一样明亮", "像", "她的眼睛", "BODY", "星星", "NATURAL_PHENOMENON"),
    ("时间如同流水", "如同", "时间", "ABSTRACT", "流水", "NATURAL_PHENOMENON"),
    ("人生好比一场旅行", "好比", "人生", "ABSTRACT", "一场旅行", "EVENT"),
    ("他的心仿佛一块石头", "仿佛", "他的心", "BODY", "一块石头", "OBJECT"),
    ("城市的夜晚犹如白昼", "犹如", "城市的夜晚", "EVENT", "白昼", "NATURAL_PHENOMENON"),
    ("孩子们的笑声似银铃", "似", "孩子们的笑声", "ABSTRACT", "银铃", "OBJECT"),
    ("她的声音好像春风", "好像", "她的声音", "ABSTRACT", "春风", "NATURAL_PHENOMENON"),
    ("思念如潮水", "如", "思念", "ABSTRACT", "潮水", "NATURAL_PHENOMENON"),
    ("记忆宛如一本旧书", "宛如", "记忆", "ABSTRACT", "一本旧书", "OBJECT"),
]


def stub_table():
    e = []
    # Template defaults: literal outcomes everywhere unless a rule below says otherwise.
    e.append(rule("contextual_meaning", {}, "contextual: {word}", render=True))
    e.append(rule("basic_meaning", {}, "basic: {word}", render=True))
    e.append(rule("meaning_contrast", {}, "contrasts: no\ncomprehensible: no\nimplicit: none"))
    e.append(rule("vehicle_identification", {}, "vehicle: NONE"))
    e.append(rule("tenor_identification", {}, "tenor: NONE"))
    e.append(rule("ground_extraction", {}, "ground: NONE"))
    e.append(rule("domain_label", {}, "domain: OTHER"))
    e.append(rule("sentence_valence", {}, "valence: neutral"))
    e.append(rule("valence_incongruity", {}, "expression: NONE"))
    e.append(rule("figurative_resolution", {}, "resolvable: no"))
    e.append(rule("comparison_extraction", {}, "tenor: NONE\nvehicle: NONE"))

    # Spatial basic sense of 深 for direct gateway calls (Protocol A reads the dictionary first).
    e.append(rule("basic_meaning", {"word": "深"}, "basic: 空间上的深度，从表面到底部的距离"))
    # Protocol A: 深 with an abstract contextual sense against its spatial basic sense.
    e.append(rule("contextual_meaning", {"sentence": DEEP, "word": "深"}, "contextual: 深奥，不容易理解"))
    e.append(rule("meaning_contrast", {"sentence": DEEP, "word": "深"},
                  "contrasts: yes\ncomprehensible: yes\nimplicit: none"))
    e.append(rule("contextual_meaning", {"sentence": KNIFE, "word": "刀"}, "contextual: 伤人的言语"))
    e.append(rule("meaning_contrast", {"sentence": KNIFE, "word": "刀"},
                  "contrasts: yes\ncomprehensible: yes\nimplicit: none"))
    # Contrast without comparison-based comprehension stays literal.
    e.append(rule("contextual_meaning", {"sentence": MONEY, "word": "金钱"}, "contextual: 宝贵的东西"))
    e.append(rule("meaning_contrast", {"sentence": MONEY, "word": "金钱"},
                  "contrasts: yes\ncomprehensible: no\nimplicit: substitution"))

    # Protocol B
    e.append(rule("vehicle_identification", {"sentence": KNIFE}, "vehicle: 刀"))
    e.append(rule("tenor_identification", {"sentence": KNIFE, "vehicle": "刀"}, "tenor: 话"))
    e.append(rule("ground_extraction", {"sentence": KNIFE}, "ground: 锋利，能伤人"))
    e.append(domain(KNIFE, "话", "ABSTRACT"))
    e.append(domain(KNIFE, "刀", "OBJECT"))
    e.append(rule("vehicle_identification", {"sentence": MONEY}, "vehicle: 金钱"))
    e.append(rule("tenor_identification", {"sentence": MONEY, "vehicle": "金钱"}, "tenor: 时间"))
    e.append(domain(MONEY, "时间", "ABSTRACT"))
    e.append(domain(MONEY, "金钱", "OBJECT"))

    # Protocol C
    e.append(rule("valence_incongruity", {"sentence": KNIFE},
                  "expression: 刀\nliteral_valence: neutral\nfigurative_valence: negative"))
    e.append(rule("figurative_resolution", {"sentence": KNIFE}, "resolvable: yes"))
    e.append(rule("sentence_valence", {"sentence": MIXED}, "valence: mixed"))
    e.append(rule("valence_incongruity", {"sentence": MIXED},
                  "expression: 胜利\nliteral_valence: positive\nfigurative_valence: negative"))

    # Protocol D
    for sentence, marker, tenor, td, vehicle, vd in SIMILES:
        e.append(comparison(sentence, marker, tenor, vehicle))
        e.append(domain(sentence, tenor, td))
        e.append(domain(sentence, vehicle, vd))
    e.append(comparison(MOTHER, "像", "她", "她妈妈"))
    e.append(domain(MOTHER, "她", "HUMAN"))
    e.append(domain(MOTHER, "她妈妈", "HUMAN"))
    e.append(comparison(APPLE, "像", "这个苹果", "那个苹果"))
    e.append(domain(APPLE, "这个苹果", "OBJECT"))
    e.append(domain(APPLE, "那个苹果", "OBJECT"))
    e.append(comparison(WANRU, "宛如", "她的笑声", "银铃"))
    e.append(domain(WANRU, "她的笑声", "ABSTRACT"))
    e.append(domain(WANRU, "银铃", "OBJECT"))
    return {"entries": e}


def sentence_instance(source_id, text, label, register=None):
    j = {"source_id": source_id, "text": text, "sentence_label": label}
    if register:
        j["register"] = register
    return j


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for r in rows:
            f.write(json.dumps(r, ensure_ascii=False, sort_keys=True) + "\n")


def named_sentences():
    return [
        ("named-01", KNIFE, "metaphor"),
        ("named-02", MOTHER, "literal"),
        ("named-03", APPLE, "literal"),
        ("named-04", DEEP, "metaphor"),
        ("named-05", WANRU, "metaphor"),
        ("named-06", MONEY, "metaphor"),
        ("named-07", MIXED, "literal"),
    ]


def determinism_corpus():
    rows = [sentence_instance(i, t, l) for i, t, l in named_sentences()]
    n = 0
    for s in SUBJECTS:
        for p in PREDICATES:
            n += 1
            rows.append(sentence_instance(f"gen-{n:03d}", f"{s}{p}。", "literal"))
    return rows


def marker_corpus():
    rows = []
    n = 0
    for t in TIMES:
        for s in SUBJECTS:
            for p in PREDICATES:
                n += 1
                if n > 490:
                    break
                rows.append(sentence_instance(f"plain-{n:03d}", f"{t}{s}{p}。", "literal"))
    for k, (sentence, *_rest) in enumerate(SIMILES, 1):
        rows.append(sentence_instance(f"simile-{k:02d}", sentence, "metaphor"))
    return rows


# Twenty sentences in PSU CMC layout; `*` marks MRW, `+` marks MFlag.
PSU = [
    ("academic", "这个/理论/有/*深/的/意义/。"),
    ("academic", "经济/*增长/速度/很/快/。"),
    ("academic", "研究/*揭示/了/问题/的/本质/。"),
    ("academic", "我们/分析/了/数据/。"),
    ("academic", "文化/是/社会/的/*根/。"),
    ("academic", "作者/提出/了/新/的/方法/。"),
    ("academic", "这/一/观点/*站/不/住/。"),
    ("fiction", "她/的/心/*碎/了/。"),
    ("fiction", "他/走/进/房间/。"),
    ("fiction", "夜/很/安静/。"),
    ("fiction", "+像/一/阵/*风/,/她/跑/了/。"),
    ("fiction", "他/的/话/像/一/把/*刀/。"),
    ("fiction", "孩子们/在/院子/里/玩/。"),
    ("fiction", "她/笑/了/。"),
    ("news", "市场/*升温/明显/。"),
    ("news", "政府/发布/了/新/政策/。"),
    ("news", "两/国/关系/*回暖/。"),
    ("news", "记者/今天/采访/了/他/。"),
    ("news", "比赛/在/北京/举行/。"),
    ("news", "油价/*跳水/。"),
]


def psu_rows():
    rows = []
    for k, (register, spec) in enumerate(PSU, 1):
        tokens = []
        for piece in spec.split("/"):
            label = "literal"
            if piece.startswith("*"):
                label, piece = "MRW", piece[1:]
            elif piece.startswith("+"):
                label, piece = "MFlag", piece[1:]
            tokens.append({"surface": piece, "label": label})
        text = "".join(t["surface"] for t in tokens)
        rows.append({"source_id": f"psu-{k:02d}", "text": text, "tokens": tokens, "register": register})
    return rows


def psu_native(rows):
    out = io.StringIO()
    for r in rows:
        out.write(f"# id = {r['source_id']}\n# register = {r['register']}\n")
        for t in r["tokens"]:
            out.write(f"{t['surface']}\t{t['label']}\n")
        out.write("\n")
    return out.getvalue()


def demo3():
    return [
        sentence_instance("demo-1", KNIFE, "metaphor"),
        sentence_instance("demo-2", MOTHER, "literal"),
        sentence_instance("demo-3", "我们今天去公园。", "literal"),
    ]


def eval_fixtures():
    gold = [
        sentence_instance("e1", "句子一。", "metaphor", "news"),
        sentence_instance("e2", "句子二。", "metaphor", "fiction"),
        sentence_instance("e3", "句子三。", "literal", "news"),
        sentence_instance("e4", "句子四。", "literal", "fiction"),
    ]

    def preds(labels):
        return [{"source_id": g["source_id"], "target": g["source_id"], "label": l}
                for g, l in zip(gold, labels)]

    perfect = preds(["METAPHORICAL", "METAPHORICAL", "LITERAL", "LITERAL"])
    # tp=1 (e1), fn=1 (e2), fp=1 (e3), tn=1 (e4)
    confusion = preds(["METAPHORICAL", "LITERAL", "METAPHORICAL", "LITERAL"])
    complement = preds(["LITERAL", "LITERAL", "METAPHORICAL", "METAPHORICAL"])
    return gold, perfect, confusion, complement


def worksheet():
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source_id", "protocol", "decision", "rationale", "verdict", "judge_id"])
    verdicts = ["correct"] * 42 + ["partially_correct"] * 3 + ["incorrect"] * 5
    for k, v in enumerate(verdicts, 1):
        decision = "METAPHORICAL" if k % 5 == 0 else "LITERAL"
        step = "cross-domain-check" if decision == "METAPHORICAL" else "marker-detection"
        w.writerow([f"s{k:03d}", "D", decision, f"step: {step} | confidence: high", v, "j1"])
    return buf.getvalue()


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "stub_table.json", "w", encoding="utf-8", newline="\n") as f:
        json.dump(stub_table(), f, ensure_ascii=False, indent=1)
        f.write("\n")
    write_jsonl(OUT / "demo3.jsonl", demo3())
    write_jsonl(OUT / "determinism_107.jsonl", determinism_corpus())
    write_jsonl(OUT / "markers_500.jsonl", marker_corpus())
    rows = psu_rows()
    write_jsonl(OUT / "psu_cmc_20.jsonl", rows)
    (OUT / "psu_cmc_20.tsv").write_text(psu_native(rows), encoding="utf-8")
    gold, perfect, confusion, complement = eval_fixtures()
    write_jsonl(OUT / "eval_gold4.jsonl", gold)
    write_jsonl(OUT / "eval_pred_perfect.jsonl", perfect)
    write_jsonl(OUT / "eval_pred_confusion.jsonl", confusion)
    write_jsonl(OUT / "eval_pred_complement.jsonl", complement)
    (OUT / "worksheet_42_3_5.csv").write_text(worksheet(), encoding="utf-8")


if __name__ == "__main__":
    main()
