#pragma once

// Small subprocess/file helpers shared by CLI-facing test code.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace proc {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

inline void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string shell_quote(const std::string& s) {
    std::string q = "'";
    for (char c : s)
        q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

inline RunResult run(const std::string& binary, const std::vector<std::string>& args) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / "ecm_proc_io";
    fs::create_directories(dir);
    fs::path out_file = dir / ("out" + std::to_string(++counter));
    fs::path err_file = dir / ("err" + std::to_string(counter));

    std::string cmd = shell_quote(binary);
    for (const auto& a : args) cmd += " " + shell_quote(a);
    cmd += " > " + shell_quote(out_file.string()) + " 2> " + shell_quote(err_file.string());

    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

inline fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("ecm_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

inline std::vector<std::string> dir_entries(const fs::path& dir) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename());
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace proc
