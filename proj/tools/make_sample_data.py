#!/usr/bin/env python3
"""Regenerates the sample data tables under data/.

The bundled tables are a small demo/test fixture of ~460 common characters.
Pinyin readings are hand-curated. Five-Strokes codes are real where curated
(entries written as =CODE below); for the rest we anchor the first letter to
the character's leading radical key and fill the remaining letters
deterministically from a hash, which preserves the radical-level clustering
the glyph embedding relies on without claiming to be a faithful Wubi dump.
Point HANFUSE_DATA_DIR at a real Wubi-86 / pinyin dump for linguistic use.

Usage: python3 tools/make_sample_data.py [outdir]
"""

import hashlib
import random
import sys
from pathlib import Path

SEMANTIC_DIM = 50

# char  pinyin[,pinyin...]  wubi (=full_code, or radical key letter a..y)
CHAR_TABLE = """
一 yi1 =ggll
二 er4 f
三 san1 d
四 si4 l
五 wu3 g
六 liu4 u
七 qi1 a
八 ba1 w
九 jiu3 v
十 shi2 f
百 bai3 d
千 qian1 t
万 wan4 d
亿 yi4 w
零 ling2 f
两 liang3 g
半 ban4 =ufk
我 wo3 =trnt
你 ni3 =wqiy
他 ta1 =wbn
她 ta1 v
它 ta1 p
们 men0 =wun
人 ren2 =wwww
民 min2 n
众 zhong4 =wwwu
自 zi4 =thd
己 ji3 n
家 jia1 =peu
个 ge4 =whj
位 wei4 =wug
者 zhe3 f
谁 shei2,shui2 y
您 nin2 w
咱 zan2 k
爸 ba4 w
妈 ma1 v
哥 ge1 =sksk
弟 di4 u
姐 jie3 v
妹 mei4 v
爷 ye2 w
奶 nai3 v
儿 er2 q
女 nv3 =vvvv
孩 hai2 b
子 zi3 =bbbb
父 fu4 w
母 mu3 x
头 tou2 u
脸 lian3 e
眼 yan3 h
耳 er3 b
鼻 bi2 t
嘴 zui3 k
手 shou3 r
脚 jiao3 e
心 xin1 n
脑 nao3 e
血 xue4 t
骨 gu3 m
天 tian1 =gdi
地 di4,de0 =fbn
山 shan1 =mmmm
水 shui3 =iiii
火 huo3 =oooo
风 feng1 m
雨 yu3 f
雪 xue3 f
云 yun2 f
电 dian4 j
星 xing1 j
月 yue4 =eeee
日 ri4 =jjjj
光 guang1 i
阴 yin1 b
阳 yang2 b
空 kong1,kong4 p
气 qi4 r
海 hai3 i
江 jiang1 =iag
河 he2 i
湖 hu2 i
池 chi2 i
波 bo1 i
浪 lang4 i
洋 yang2 i
岛 dao3 q
岸 an4 m
木 mu4 =ssss
林 lin2 =ssy
森 sen1 s
树 shu4 s
花 hua1 a
草 cao3 =ajj
叶 ye4 k
根 gen1 s
鸟 niao3 q
马 ma3 c
牛 niu2 r
羊 yang2 u
鱼 yu2 q
虫 chong2 j
猫 mao1 q
狗 gou3 q
猪 zhu1 q
鸡 ji1 c
龙 long2 d
虎 hu3 h
熊 xiong2 c
鹿 lu4 y
蛇 she2 j
兔 tu4 q
年 nian2 r
时 shi2 j
分 fen1,fen4 w
秒 miao3 t
晚 wan3 j
午 wu3 t
夜 ye4 y
春 chun1 d
夏 xia4 d
秋 qiu1 t
冬 dong1 t
今 jin1 w
明 ming2 =jeg
昨 zuo2 j
久 jiu3 q
常 chang2 i
晨 chen2 j
辰 chen2 d
雷 lei2 f
国 guo2 =lgyi
城 cheng2 f
市 shi4 y
县 xian4 e
乡 xiang1 x
村 cun1 s
镇 zhen4 q
街 jie1 t
道 dao4 u
路 lu4 k
桥 qiao2 =stdj
学 xue2 i
校 xiao4 s
医 yi1 a
院 yuan4 b
店 dian4 y
厂 chang3 d
场 chang3 f
馆 guan3 q
楼 lou2 s
房 fang2 y
屋 wu1 n
门 men2 u
窗 chuang1 p
墙 qiang2 f
园 yuan2 l
上 shang4 =hhgg
下 xia4 =ghi
左 zuo3 d
右 you4 d
前 qian2 u
后 hou4 r
里 li3 j
外 wai4 q
中 zhong1,zhong4 =khk
间 jian1 u
东 dong1 a
西 xi1 s
南 nan2 f
北 bei3 u
大 da4 =dddd
小 xiao3 i
多 duo1 q
少 shao3,shao4 i
长 chang2,zhang3 t
短 duan3 t
高 gao1 y
低 di1 w
好 hao3,hao4 =vbg
坏 huai4 f
新 xin1 u
旧 jiu4 h
快 kuai4 n
慢 man4 n
冷 leng3 u
热 re4 r
暖 nuan3 j
凉 liang2 u
干 gan1,gan4 f
湿 shi1 i
轻 qing1 l
重 zhong4,chong2 t
远 yuan3 f
近 jin4 r
深 shen1 i
浅 qian3 i
宽 kuan1 p
窄 zhai3 p
粗 cu1 o
细 xi4 x
美 mei3 u
丑 chou3 n
强 qiang2,jiang4 x
弱 ruo4 x
胖 pang4 e
瘦 shou4 u
真 zhen1 f
假 jia3,jia4 w
对 dui4 c
错 cuo4 q
是 shi4 =jghu
有 you3 =def
在 zai4 =dhfd
做 zuo4 w
作 zuo4 w
为 wei4,wei2 y
要 yao4,yao1 s
会 hui4 w
能 neng2 c
可 ke3 s
想 xiang3 s
看 kan4,kan1 r
见 jian4 m
说 shuo1 y
话 hua4 y
讲 jiang3 y
读 du2 y
写 xie3 p
听 ting1 k
起 qi3 f
走 zou3 f
跑 pao3 k
跳 tiao4 k
飞 fei1 n
来 lai2 g
去 qu4 f
回 hui2 l
到 dao4 g
过 guo4 p
出 chu1 b
入 ru4 t
进 jin4 f
退 tui4 v
开 kai1 g
关 guan1 u
坐 zuo4 w
站 zhan4 u
行 xing2,hang2 t
动 dong4 f
用 yong4 e
取 qu3 b
拿 na2 w
放 fang4 y
找 zhao3 r
得 de2,de0,dei3 t
打 da3 r
给 gei3,ji3 x
让 rang4 y
叫 jiao4 k
问 wen4 u
答 da2,da1 t
教 jiao1,jiao4 f
知 zhi1 t
记 ji4 y
忘 wang4 y
爱 ai4 e
吃 chi1 k
喝 he1 k
睡 shui4 h
买 mai3 n
卖 mai4 f
送 song4 u
收 shou1 n
带 dai4 g
穿 chuan1 p
洗 xi3 i
帮 bang1 d
等 deng3 t
的 de0,di4 =rqyy
了 le0,liao3 =bnh
着 zhe0,zhao2,zhuo2 u
呢 ne0,ni2 k
吗 ma0 k
吧 ba0 k
啊 a0,a1 k
不 bu4 =gii
没 mei2 i
很 hen3 t
太 tai4 d
再 zai4 g
又 you4 =cccc
也 ye3 b
都 dou1,du1 f
只 zhi3,zhi1 k
就 jiu4 y
还 hai2,huan2 =gipi
更 geng4,geng1 g
最 zui4 j
被 bei4 p
把 ba3 r
从 cong2 =wwy
向 xiang4 t
往 wang3 t
于 yu2 g
与 yu3 g
和 he2,he4 t
或 huo4 a
但 dan4 w
而 er2 d
且 qie3 e
所 suo3 r
以 yi3 n
因 yin1 l
果 guo3 j
如 ru2 v
虽 sui1 k
然 ran2 q
这 zhe4 =ypi
那 na4,na3 v
哪 na3,na0 k
什 shen2,shi2 w
么 me0 t
怎 zen3 t
样 yang4 s
工 gong1 =aaaa
事 shi4 g
情 qing2 n
业 ye4 o
务 wu4 t
员 yuan2 k
老 lao3 f
师 shi1 j
生 sheng1 t
朋 peng2 e
友 you3 d
同 tong2 m
志 zhi4 f
客 ke4 p
主 zhu3 y
才 cai2 f
部 bu4 u
队 dui4 b
军 jun1 p
警 jing3 a
官 guan1 p
兵 bing1 r
法 fa3 i
律 lv4 t
规 gui1 f
则 ze2 m
钱 qian2 q
币 bi4 t
价 jia4 w
值 zhi2 w
贸 mao4 q
易 yi4 j
书 shu1 n
报 bao4 r
纸 zhi3 x
笔 bi3 t
墨 mo4 l
字 zi4 p
词 ci2 y
句 ju4 q
文 wen2 y
章 zhang1 u
诗 shi1 y
画 hua4 g
音 yin1 u
乐 le4,yue4 q
声 sheng1 f
色 se4 q
味 wei4 k
香 xiang1 t
茶 cha2 a
酒 jiu3 i
饭 fan4 q
菜 cai4 a
肉 rou4 m
蛋 dan4 n
糖 tang2 o
盐 yan2 f
油 you2 i
思 si1 l
意 yi4 u
念 nian4 w
感 gan3 d
觉 jue2,jiao4 i
望 wang4 y
希 xi1 q
梦 meng4 s
理 li3 g
由 you2 m
原 yuan2 d
始 shi3 v
终 zhong1 x
点 dian3 h
线 xian4 x
面 mian4 d
体 ti3 w
积 ji1 t
数 shu4,shu3 o
量 liang4,liang2 j
质 zhi4 r
形 xing2 g
式 shi4 a
结 jie2,jie1 x
束 shu4 g
段 duan4 w
程 cheng2 t
直 zhi2 f
题 ti2 j
名 ming2 q
车 che1 l
船 chuan2 t
票 piao4 s
信 xin4 w
邮 you2 m
件 jian4 w
网 wang3 m
机 ji1 s
器 qi4 k
具 ju4 h
箱 xiang1 t
包 bao1 q
衣 yi1 y
服 fu2,fu4 e
帽 mao4 m
鞋 xie2 a
床 chuang2 y
桌 zhuo1 h
椅 yi3 s
灯 deng1 o
杯 bei1 s
瓶 ping2 u
盒 he2 w
伞 san3 w
镜 jing4 q
表 biao3 g
钟 zhong1 q
浦 pu3 =igey
傅 fu4 =wgef
甲 jia3 =lhnh
乙 yi3 =nnll
丙 bing3 g
丁 ding1 =sgh
戊 wu4 d
王 wang2 =gggg
土 tu3 =ffff
禾 he2 =tttt
白 bai2 =rrrr
金 jin1 =qqqq
言 yan2 =yyyy
立 li4 =uuuu
之 zhi1 =pppp
已 yi3 =nnnn
目 mu4 =hhhh
田 tian2 =llll
口 kou3 =kkkk
翁 weng1 w
穷 qiong2 p
兄 xiong1 k
略 lve4 l
旅 lv3 y
绿 lv4,lu4 x
伦 lun2 w
训 xun4 y
群 qun2 v
庄 zhuang1 y
壮 zhuang4 u
状 zhuang4 u
安 an1 p
恩 en1 l
昂 ang2 j
欧 ou1 a
奥 ao4 t
鹅 e2 t
怪 guai4 n
瓜 gua1 r
黄 huang2 a
早 zao3 =jhnh
"""

# initial -> (standard-form letters, weight). Pairs that sound alike share
# letters and differ only in the weight bit.
INITIALS = [
    ("b", "p", 0), ("p", "p", 1),
    ("m", "m", 0), ("f", "f", 0),
    ("d", "t", 0), ("t", "t", 1),
    ("n", "n", 0), ("l", "l", 0),
    ("g", "k", 0), ("k", "k", 1),
    ("h", "h", 0),
    ("j", "tj", 0), ("q", "tj", 1), ("x", "sj", 0),
    ("zh", "tr", 0), ("ch", "tr", 1),
    ("sh", "sr", 0), ("r", "sr", 1),
    ("z", "ts", 1), ("c", "ts", 0),
    ("s", "s", 0),
    ("y", "i", 0), ("w", "u", 0),
]

# final -> (single-vowel letters over a,o,e,i,u,v; nasal in {-, n, ng})
FINALS = [
    ("a", "a", "-"), ("o", "o", "-"), ("e", "e", "-"),
    ("i", "i", "-"), ("u", "u", "-"), ("v", "v", "-"),
    ("ai", "ai", "-"), ("ei", "ei", "-"), ("ui", "ui", "-"),
    ("ao", "ao", "-"), ("ou", "ou", "-"), ("iu", "iu", "-"),
    ("ie", "ie", "-"), ("ue", "ue", "-"), ("ve", "ve", "-"),
    ("er", "e", "-"),
    ("an", "a", "n"), ("en", "e", "n"), ("in", "i", "n"),
    ("un", "u", "n"), ("vn", "v", "n"),
    ("ang", "a", "ng"), ("eng", "e", "ng"), ("ing", "i", "ng"),
    ("ong", "o", "ng"),
    ("ia", "ia", "-"), ("ua", "ua", "-"), ("uo", "uo", "-"),
    ("uai", "uai", "-"), ("iao", "iao", "-"),
    ("ian", "ia", "n"), ("uan", "ua", "n"), ("van", "va", "n"),
    ("iang", "ia", "ng"), ("uang", "ua", "ng"),
    ("iong", "io", "ng"), ("ueng", "ue", "ng"),
]

TWO_LETTER_INITIALS = ("zh", "ch", "sh")
ONE_LETTER_INITIALS = set("bpmfdtnlgkhjqxrzcsyw")
FINAL_SET = {f for f, _, _ in FINALS}


def split_syllable(syl):
    assert len(syl) >= 2 and syl[-1] in "01234", syl
    body = syl[:-1]
    assert all("a" <= c <= "z" for c in body), syl
    initial = ""
    for cand in TWO_LETTER_INITIALS:
        if body.startswith(cand):
            initial = cand
            break
    if not initial and body[0] in ONE_LETTER_INITIALS:
        initial = body[0]
    final = body[len(initial):]
    assert final, f"empty final in {syl}"
    assert final in FINAL_SET, f"final {final!r} of {syl!r} not mapped"
    return initial, final, int(syl[-1])


def char_digest(ch, salt=b""):
    return hashlib.sha256(ch.encode("utf-8") + salt).digest()


def synth_code(ch, radical):
    d = char_digest(ch, b"wubi")
    length = 3 if d[0] % 3 == 0 else 4
    letters = [radical]
    for i in range(1, length):
        letters.append(chr(ord("a") + d[i] % 25))
    return "".join(letters)


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"
    outdir.mkdir(parents=True, exist_ok=True)

    chars = []
    seen = set()
    for raw in CHAR_TABLE.strip().splitlines():
        parts = raw.split()
        assert len(parts) == 3, raw
        ch, pinyins, wubi = parts
        assert len(ch) == 1, raw
        if ch in seen:
            continue
        seen.add(ch)
        syllables = pinyins.split(",")
        for syl in syllables:
            split_syllable(syl)
        if wubi.startswith("="):
            code = wubi[1:]
        else:
            assert len(wubi) == 1 and "a" <= wubi <= "y", raw
            code = synth_code(ch, wubi)
        assert 1 <= len(code) <= 4 and all("a" <= c <= "y" for c in code), raw
        chars.append((ch, syllables, code))

    with open(outdir / "wubi.tsv", "w", encoding="utf-8") as f:
        f.write("# sample Five-Strokes table (see tools/make_sample_data.py)\n")
        for ch, _, code in chars:
            f.write(f"{ch}\t{code}\n")

    with open(outdir / "pinyin.tsv", "w", encoding="utf-8") as f:
        f.write("# sample pinyin table; first syllable is the canonical reading\n")
        for ch, syllables, _ in chars:
            f.write(f"{ch}\t{','.join(syllables)}\n")

    with open(outdir / "initials.tsv", "w", encoding="utf-8") as f:
        f.write("# initial\tstandard-form letters\tweight\n")
        for initial, letters, weight in INITIALS:
            f.write(f"{initial}\t{letters}\t{weight}\n")

    with open(outdir / "finals.tsv", "w", encoding="utf-8") as f:
        f.write("# final\tsingle vowels (v = u-umlaut)\tnasal (-, n, ng)\n")
        for final, vowels, nasal in FINALS:
            f.write(f"{final}\t{vowels}\t{nasal}\n")

    # Unit-norm pseudo-random semantic vectors; a few characters are left
    # out on purpose so the has_semantic=false path gets exercised.
    covered = [(ch, code) for ch, _, code in chars if char_digest(ch, b"cov")[0] % 37 != 0]
    with open(outdir / "vectors.vec", "w", encoding="utf-8") as f:
        f.write(f"{len(covered)} {SEMANTIC_DIM}\n")
        for ch, _ in covered:
            rng = random.Random(int.from_bytes(char_digest(ch, b"vec")[:8], "big"))
            values = [rng.gauss(0.0, 1.0) for _ in range(SEMANTIC_DIM)]
            norm = sum(v * v for v in values) ** 0.5
            values = [v / norm for v in values]
            f.write(ch + " " + " ".join(f"{v:.6f}" for v in values) + "\n")

    print(f"{len(chars)} characters, {len(covered)} with semantic vectors -> {outdir}")


if __name__ == "__main__":
    main()
