#!/usr/bin/env python3
"""Regenerates tests/fixtures/crop_circles/ and tests/fixtures/crop_circles_script.json.

The corpus is laid out so that the recorded 40-action crop-circle episode
(Search, Load Page <1>, Quote, Scroll Down x5, ..., Finish) is legal and
yields four facts: the second fact straddles a window boundary and is
assembled with Quote, Scroll Down, Quote, Merge.

Pages are plain <p> paragraphs, so the extracted body is exactly the
paragraphs joined by newlines. Files are named by the first 16 hex digits
of SHA-256 of the query / url, matching the C++ fixture provider.
"""

import hashlib
import html
import json
import pathlib
import sys

WINDOW = 500
N_F = 10

ROOT = pathlib.Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "fixtures"
CORPUS = OUT / "crop_circles"

QUESTION = "麦田怪圈是什么？它们是如何形成的？"
QUERY_1 = "麦田怪圈是什么"
QUERY_2 = "麦田怪圈是如何形成的"

FACT_1 = ("麦田怪圈指的是农田里成片庄稼被压倒后形成的规则图形，从高处俯瞰时最为清晰，"
          "常见的有圆形、环形以及由多个圆组合而成的复杂花纹。这类图形多在一夜之间出现，"
          "最早的大量报道来自英国南部，之后世界各地也陆续有人发现，并引发了许多关于其来历的猜测。")
FACT_2 = ("人工制作的观点认为，大多数图案出自人手。制作者先用测量绳在田里定出圆心和半径，"
          "再踩着一块两端系绳的长木板向前推进，把麦秆成排压弯，一圈圈扩展成完整的图形。"
          "几位英国制作者曾公开演示整个过程，只用一个晚上就完成了大型图案，"
          "他们还展示了事先画在纸上的设计图和用来校准角度的简单工具。")
FACT_3 = ("自然现象的观点认为，局部旋风或强对流天气可能把作物吹成圆形倒伏，"
          "只是这种机制目前仍缺乏可靠的观测记录，图案中复杂的几何结构也难以用天气来解释。")
FACT_4 = ("电磁作用的观点认为，地下水、土壤和附近输电设施共同形成的电场或磁场，"
          "可能让麦秆在短时间内受热弯曲并朝同一方向倒下。支持者提到部分图案附近的植株节点有膨大现象，"
          "但反对者指出这些现象同样可以由人工踩压后作物自身的恢复生长造成，"
          "因此这一说法至今没有得到实验的直接证实。")
ANSWER = ("麦田怪圈是庄稼被压倒后在田地里留下的规则几何图形，通常在夜间出现，从空中看最清楚。【1】"
          "关于成因主要有三种看法。第一种认为图案是人做的：用绳子定出圆心和半径，"
          "再踩着系绳的木板把麦秆压弯，一圈圈扩展开来，已有制作者公开演示过。【2】"
          "第二种认为是旋风等天气现象造成的，但缺少观测证据，也解释不了复杂的图形。【3】"
          "第三种认为电场或磁场让麦秆受热弯曲倒伏，不过这一说法同样缺乏实验支持。【4】")

# Neutral filler; none of it repeats the first or last ten characters of a fact.
FILLER_SENTENCES = [
    "田野里的作物在夏季生长得十分茂盛，农民们每天清晨都会到地里查看长势。",
    "当地的气候以温和湿润为主，雨水充沛，适合小麦和油菜等作物的种植。",
    "每年到了收获的季节，附近村庄的居民都会聚在一起庆祝丰收。",
    "研究人员通常会在现场拍摄照片，并测量图案的尺寸和方向。",
    "一些游客专程前来参观，希望亲眼看到这些图案的全貌。",
    "航拍技术的普及让人们能够从空中更清楚地观察地面上的图形。",
    "历史档案中也记载过类似的现象，但当时的描述往往比较简略。",
    "不同地区的土壤成分差异很大，这会影响作物的高度和密度。",
]


def digest(s: str) -> str:
    return hashlib.sha256(s.encode("utf-8")).hexdigest()[:16]


def filler(n: int, seed: int) -> str:
    """Exactly n characters of filler without whitespace."""
    out = []
    i = seed
    while sum(len(x) for x in out) < n:
        out.append(FILLER_SENTENCES[i % len(FILLER_SENTENCES)])
        i += 1
    return "".join(out)[:n]


def page_html(title: str, paragraphs: list[str]) -> str:
    body = "".join(f"<p>{html.escape(p, quote=False)}</p>\n" for p in paragraphs)
    return ("<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
            f"<title>{html.escape(title, quote=False)}</title></head>\n<body>\n"
            "<nav><a href=\"/\">首页</a> <a href=\"/list\">列表</a></nav>\n"
            f"{body}"
            "<footer><a href=\"/about\">关于我们</a></footer>\n</body></html>\n")


def windows(body: str) -> list[str]:
    return [body[i:i + WINDOW] for i in range(0, max(len(body), 1), WINDOW)] or [""]


def encode(window: str, begin: int, end: int) -> str:
    s = window[begin:end]
    if len(s) < 2 * N_F:
        return "[s]" + s + "[e]"
    return "[s]" + s[:N_F] + "[e]" + s[-N_F:]


def locate(body: str, text: str) -> tuple[int, int]:
    start = body.index(text)
    assert body.count(text) == 1
    return start, start + len(text)


def main() -> int:
    url_a = "https://baike.example.com/item/麦田怪圈"
    url_b = "https://news.example.com/2021/crop-circles.html"
    url_c = "https://science.example.org/articles/crop-formation"
    url_d = "https://travel.example.net/england/wiltshire"
    url_e = "https://qa.example.com/question/8812"
    url_f = "https://blog.example.cn/posts/maitian"
    url_g = "https://zhishi.example.com/maitian/chengyin"

    # Page A: fact 1 in the first window, then enough text for 17 windows.
    heading_a = "麦田怪圈"
    paras_a = [heading_a, FACT_1] + [filler(480, k) for k in range(17)]
    body_a = "\n".join(paras_a)
    assert len(windows(body_a)) >= 16

    # Page G: fact 2 starts 80 characters before the end of window 1 and runs
    # into window 2; fact 3 follows in window 2; fact 4 sits in window 3.
    pre = [filler(229, k) for k in range(4)]            # 4*229 + 4 newlines = 920
    gap_len = 1520 - (920 + len(FACT_2) + 1 + len(FACT_3) + 1) - 1
    assert gap_len > 0
    paras_g = pre + [FACT_2, FACT_3, filler(gap_len, 5), FACT_4, filler(700, 6)]
    body_g = "\n".join(paras_g)
    assert len(windows(body_g)) >= 5

    pages = {
        url_a: page_html("麦田怪圈_百科", paras_a),
        url_b: page_html("英国再现巨型麦田怪圈", [filler(300, 1), filler(200, 2)]),
        url_c: page_html("麦田怪圈的科学解释", [filler(650, 3)]),
        url_d: page_html("威尔特郡旅游指南", [filler(420, 4)]),
        url_e: page_html("麦田怪圈是怎么形成的？", [filler(260, 5), filler(90, 6)]),
        url_f: page_html("麦田怪圈：我的实地探访", [filler(380, 7)]),
        url_g: page_html("麦田怪圈的几种成因", paras_g),
    }
    searches = {
        QUERY_1: [
            {"title": "麦田怪圈_百科", "url": url_a, "snippet": "麦田怪圈是指在麦田或其它田地上出现的几何图案。"},
            {"title": "英国再现巨型麦田怪圈", "url": url_b, "snippet": "近日，英国南部再次出现巨型麦田怪圈。"},
            {"title": "麦田怪圈的科学解释", "url": url_c, "snippet": "科学家对麦田怪圈提出了多种解释。"},
            {"title": "威尔特郡旅游指南", "url": url_d, "snippet": "威尔特郡以麦田怪圈和巨石阵闻名。"},
        ],
        QUERY_2: [
            {"title": "麦田怪圈是怎么形成的？", "url": url_e, "snippet": "关于麦田怪圈的形成有很多说法。"},
            {"title": "麦田怪圈：我的实地探访", "url": url_f, "snippet": "去年夏天我专程去看了麦田怪圈。"},
            {"title": "麦田怪圈的几种成因", "url": url_g, "snippet": "人为说、自然形成说与磁场说。"},
        ],
    }

    (CORPUS / "search").mkdir(parents=True, exist_ok=True)
    (CORPUS / "pages").mkdir(parents=True, exist_ok=True)
    for query, results in searches.items():
        text = json.dumps({"query": query, "results": results}, ensure_ascii=False,
                          indent=1, sort_keys=True)
        (CORPUS / "search" / f"{digest(query)}.json").write_text(text + "\n", encoding="utf-8")
    for url, page in pages.items():
        (CORPUS / "pages" / f"{digest(url)}.html").write_text(page, encoding="utf-8")

    wa = windows(body_a)
    wg = windows(body_g)
    f1 = locate(wa[0], FACT_1)
    g2 = locate(body_g, FACT_2)
    g3 = locate(body_g, FACT_3)
    g4 = locate(body_g, FACT_4)
    assert g2[0] // WINDOW == 1 and (g2[1] - 1) // WINDOW == 2
    assert g3[0] // WINDOW == 2 and (g3[1] - 1) // WINDOW == 2
    assert g4[0] // WINDOW == 3 and (g4[1] - 1) // WINDOW == 3

    def span(window_index, begin, end):
        return encode(wg[window_index], begin - window_index * WINDOW, end - window_index * WINDOW)

    def act(name, **kw):
        return {"action": name, **kw}

    steps = (
        [act("Search", query=QUERY_1), act("Load Page <1>"),
         act("Quote", span=encode(wa[0], *f1))]
        + [act("Scroll Down")] * 5 + [act("Scroll Up")] + [act("Scroll Down")] * 11
        + [act("Go Back"), act("Search", query=QUERY_2), act("Load Page <1>"), act("Go Back"),
           act("Load Page <3>")]
        + [act("Scroll Down")] * 4 + [act("Scroll Up")] * 3
        + [act("Quote", span=span(1, g2[0], 2 * WINDOW)), act("Scroll Down"),
           act("Quote", span=span(2, 2 * WINDOW, g2[1])), act("Merge"),
           act("Quote", span=span(2, *g3)), act("Scroll Down"),
           act("Quote", span=span(3, *g4)), act("Finish")]
    )
    assert len(steps) == 40
    script = {"question": QUESTION, "answer": ANSWER, "referenced": [0, 1, 2, 3],
              "expected_facts": [FACT_1, FACT_2, FACT_3, FACT_4], "steps": steps}
    (OUT / "crop_circles_script.json").write_text(
        json.dumps(script, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {CORPUS} and {OUT / 'crop_circles_script.json'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
