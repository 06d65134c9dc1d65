// Drives the built proxmesh binary through std::system.

#include "proxmesh/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;
using proxmesh::read_file;
using proxmesh::write_file;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("proxmesh_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    // Exit status of `proxmesh <args>`; stdout goes to out.txt, stderr to err.txt.
    int run(const std::string& args) const {
        const std::string cmd = std::string(PROXMESH_CLI) + " " + args + " >" + path("out.txt") + " 2>" + path("err.txt");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    std::string out() const { return read_file(path("out.txt")); }
    std::string err() const { return read_file(path("err.txt")); }

    void fan_mesh() {
        write_file(path("fan.txt"), "0,0\n4,0\n2,3\n2,1\n");
        ASSERT_EQ(run("triangulate " + path("fan.txt") + " -o " + path("fan.json")), 0) << err();
    }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, GenerateIsDeterministic) {
    ASSERT_EQ(run("generate --seed 7 -n 30 -o " + path("a.txt")), 0);
    ASSERT_EQ(run("generate --seed 7 -n 30 -o " + path("b.txt")), 0);
    EXPECT_EQ(read_file(path("a.txt")), read_file(path("b.txt")));
    EXPECT_EQ(proxmesh::parse_sites(read_file(path("a.txt"))).size(), 30u);
    ASSERT_EQ(run("generate --seed 8 -n 30"), 0);
    EXPECT_NE(out(), read_file(path("a.txt")));
}

TEST_F(Cli, GenerateRejectsTooFewSites) {
    EXPECT_EQ(run("generate -n 2"), 2);
    EXPECT_NE(err().find("error:"), std::string::npos);
    EXPECT_EQ(run("generate --bbox 0,0,0,5"), 2);
}

TEST_F(Cli, TriangulateFan) {
    fan_mesh();
    const std::string json = read_file(path("fan.json"));
    EXPECT_NE(json.find("\"triangles\""), std::string::npos);
    EXPECT_EQ(run("triangulate " + path("fan.txt")), 0);
    EXPECT_EQ(out(), json);
    ASSERT_EQ(run("voronoi " + path("fan.txt")), 0);
    EXPECT_NE(out().find("\"voronoi\""), std::string::npos);
}

TEST_F(Cli, TriangulateErrors) {
    write_file(path("bad.txt"), "0,0\n1,1\n2;2\n");
    EXPECT_EQ(run("triangulate " + path("bad.txt")), 2);
    EXPECT_NE(err().find("line 3"), std::string::npos);
    write_file(path("line.txt"), "0,0\n1,1\n2,2\n");
    EXPECT_EQ(run("triangulate " + path("line.txt")), 2);
    write_file(path("dup.txt"), "0,0\n1,0\n0,0\n0,1\n");
    EXPECT_EQ(run("triangulate " + path("dup.txt")), 2);
    EXPECT_EQ(run("triangulate " + path("missing.txt")), 2);
    EXPECT_EQ(run("frobnicate"), 2);
}

TEST_F(Cli, RelateExitCodes) {
    fan_mesh();
    const auto mesh = proxmesh::mesh_from_json(read_file(path("fan.json")));
    const std::string id = mesh.id();
    write_file(path("a.json"), R"({"mesh_id":")" + id + R"(","vertices":[0]})");
    write_file(path("b.json"), R"({"mesh_id":")" + id + R"(","vertices":[1]})");
    write_file(path("c.json"), R"({"mesh_id":")" + id + R"(","vertices":[0]})");
    const std::string m = path("fan.json") + " ";
    EXPECT_EQ(run("relate " + m + path("a.json") + " " + path("b.json") + " near"), 1);
    EXPECT_EQ(run("relate " + m + path("a.json") + " " + path("c.json") + " near"), 0);
    EXPECT_NE(out().find("verdict true"), std::string::npos);
    EXPECT_EQ(run("relate " + m + path("a.json") + " " + path("c.json") + " far"), 1);
    EXPECT_NE(out().find("verdict false"), std::string::npos);
    EXPECT_EQ(run("relate " + m + path("a.json") + " " + path("c.json") + " adjacent"), 2);
    EXPECT_NE(err().find("unknown relation"), std::string::npos);
    EXPECT_EQ(run("relate " + m + path("a.json") + " " + path("c.json") + " near --format structured"), 0);
    EXPECT_NE(out().find("\"verdict\": true"), std::string::npos);

    write_file(path("other.txt"), "0,0\n5,0\n2,3\n2,1\n");
    ASSERT_EQ(run("triangulate " + path("other.txt") + " -o " + path("other.json")), 0);
    EXPECT_EQ(run("relate " + path("other.json") + " " + path("a.json") + " " + path("c.json") + " near"), 2);
}

TEST_F(Cli, CheckPasses) {
    EXPECT_EQ(run("check --suite all --trials 2 -n 12"), 0) << out();
    EXPECT_NE(out().find("result PASS"), std::string::npos);
    EXPECT_EQ(run("check --suite nonsense"), 2);
    EXPECT_EQ(run("check --constraints x.json"), 2);
}

TEST_F(Cli, CheckFixedMesh) {
    fan_mesh();
    write_file(path("cons.json"), R"({"constraints":[[0,2]]})");
    EXPECT_EQ(run("check --suite thm37 --trials 2 --mesh " + path("fan.json") + " --constraints " + path("cons.json")), 0)
        << out();
}

TEST_F(Cli, RenderIsStable) {
    fan_mesh();
    const auto mesh = proxmesh::mesh_from_json(read_file(path("fan.json")));
    write_file(path("h1.json"), R"({"mesh_id":")" + mesh.id() + R"(","triangles":[0]})");
    write_file(path("h2.json"), R"({"mesh_id":")" + mesh.id() + R"(","vertices":[3]})");
    const std::string args = "render " + path("fan.json") + " --voronoi --subcomplex " + path("h1.json") +
                             " --subcomplex " + path("h2.json") + " -o ";
    ASSERT_EQ(run(args + path("a.svg")), 0) << err();
    ASSERT_EQ(run(args + path("b.svg")), 0);
    const std::string svg = read_file(path("a.svg"));
    EXPECT_EQ(svg, read_file(path("b.svg")));
    EXPECT_NE(svg.find("highlight-0"), std::string::npos);
    EXPECT_NE(svg.find("highlight-1"), std::string::npos);
    EXPECT_NE(svg.find("voronoi"), std::string::npos);

    write_file(path("empty.json"), "");
    EXPECT_EQ(run("render " + path("empty.json") + " -o " + path("c.svg")), 2);
    EXPECT_NE(err().find("empty"), std::string::npos);
}
