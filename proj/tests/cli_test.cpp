#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
};

Run pebble(const std::string& args) {
  std::string cmd = std::string(PEBBLE_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string data = PEBBLING_DATA_DIR;

bool contains(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, NumberOfFamily) {
  auto r = pebble("number --family cycle:6");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "8\n");
}

TEST(Cli, NumberFromFileWithWitness) {
  auto r = pebble("number --graph " + data + "/lemke.graph --witness");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "8\n"));
  EXPECT_TRUE(contains(r.out, "unsolvable at root"));
}

TEST(Cli, SolveModes) {
  auto g = pebble("solve --family cycle:5 --dist 0,0,3,2,0 --root 0 --mode greedy");
  EXPECT_EQ(g.code, 0);
  EXPECT_TRUE(contains(g.out, "UNSOLVABLE (greedy)"));
  auto u = pebble("solve --family cycle:5 --dist 0,0,3,2,0 --root 0");
  EXPECT_TRUE(contains(u.out, "SOLVABLE (unrestricted)"));
  EXPECT_TRUE(contains(u.out, "-> 0"));
  auto f = pebble("solve --graph " + data + "/lemke.graph --dist-file " + data + "/lemke.dist --root 0");
  EXPECT_EQ(f.code, 0);
  EXPECT_TRUE(contains(f.out, "UNSOLVABLE"));
}

TEST(Cli, Family) {
  EXPECT_EQ(pebble("family cycle:7").out, "11\n");
  EXPECT_EQ(pebble("family petersen").out, "unknown\n");
  auto g = pebble("family grid:1,1 --p 3,2 --exact");
  EXPECT_EQ(g.out, "6\nexact 6\n");
}

TEST(Cli, Properties) {
  auto two = pebble("two-pebbling --family lemke");
  EXPECT_EQ(two.code, 1);
  EXPECT_TRUE(contains(two.out, "fails"));
  EXPECT_EQ(pebble("two-pebbling --family cycle:5").code, 0);
  EXPECT_EQ(pebble("class0 --family path:3").code, 1);
  EXPECT_EQ(pebble("class0 --family petersen").code, 0);
  auto gr = pebble("graham --family1 path:2 --family2 path:3");
  EXPECT_EQ(gr.code, 0);
  EXPECT_EQ(gr.out, "8 <= 8\n");
  auto gp = pebble("genprod --family1 path:2 --family2 path:2 --cross 0-0,1-1");
  EXPECT_EQ(gp.code, 0);
  EXPECT_TRUE(contains(gp.out, "f(H) = 4"));
}

TEST(Cli, Lemke) {
  auto r = pebble("lemke solve --q 4 --xs 3,5,7,9 --certificate");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "I = {1,2}"));
  EXPECT_TRUE(contains(r.out, "4 | sum"));
  EXPECT_TRUE(contains(r.out, "gcd-sum = 2 <= 4"));
  EXPECT_TRUE(contains(r.out, "--dim 1-->"));
  EXPECT_EQ(pebble("lemke solve --q 4 --xs 3,5").code, 2);
  EXPECT_EQ(pebble("lemke solve --q 2 --xs 1,0").code, 2);
}

TEST(Cli, Lattice) {
  EXPECT_EQ(pebble("lattice count bmul --n 4 --w 4 --b 3").out, "31\n");
  auto s = pebble("lattice supernormal --n 3 --b 2 --s 2");
  EXPECT_TRUE(contains(s.out, "gap = 1/18"));
  auto sh = pebble("lattice shadow --w 3 --b 2 --family " + data + "/family_ranks.txt");
  EXPECT_EQ(sh.code, 0);
  EXPECT_TRUE(contains(sh.out, "family: {1,1,2} {1,2,2} {1,1,3} {1,3,3}"));
  auto g = pebble("lattice genlov --w 3 --b 2 --nmax 3");
  EXPECT_EQ(g.code, 1);
  EXPECT_TRUE(contains(g.out, "COUNTEREXAMPLE w=3 |F|=1"));
  EXPECT_EQ(pebble("lattice genlov --w 2 --b 2 --nmax 3").code, 0);
  EXPECT_EQ(pebble("lattice normal --n 3 --b 2 --u 1 --w 2").out, "normal\n");
}

TEST(Cli, Threshold) {
  auto r = pebble("threshold --family complete --n 16,64 --trials 200 --seed 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "n,t_half\n16,"));
  EXPECT_TRUE(contains(r.out, "exponent"));
  auto t = pebble("threshold --family star --n 32 --t 8 --trials 100");
  EXPECT_TRUE(contains(t.out, "n,t,trials,successes"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(pebble("").code, 2);
  EXPECT_EQ(pebble("number").code, 2);
  EXPECT_EQ(pebble("number --family moebius:3").code, 2);
  EXPECT_EQ(pebble("solve --family cycle:5 --dist 1,2 --root 0").code, 2);
  EXPECT_EQ(pebble("number --family cycle:6 --budget 5").code, 3);
  EXPECT_TRUE(contains(pebble("number --family cycle:6 --budget 5").out, "[8, 16]"));
  EXPECT_EQ(pebble("--help").code, 0);
}
