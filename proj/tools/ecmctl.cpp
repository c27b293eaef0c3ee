// ecmctl: validate content models, bind and render content into pages,
// trace machine programs, compile relational schemas.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecm/machine.hpp"
#include "ecm/model.hpp"
#include "ecm/personalization.hpp"
#include "ecm/schema.hpp"
#include "ecm/template.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

bool write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    out.flush();
    return static_cast<bool>(out);
}

void print_diagnostics(const fs::path& path, const std::vector<ecm::Diagnostic>& diags) {
    for (const auto& d : diags)
        std::cerr << "error: " << path.string() << ":" << ecm::render_diagnostic(d) << "\n";
}

int cmd_validate(const fs::path& model_path) {
    auto text = read_file(model_path);
    if (!text) {
        std::cerr << "error: cannot read " << model_path.string() << "\n";
        return kUsageError;
    }
    auto model = ecm::parse_model(*text);
    if (!model) {
        print_diagnostics(model_path, model.error());
        return kDomainError;
    }
    const auto& m = model.value();
    std::cout << m.classes.size() << " classes, " << m.slot_count() << " slots, "
              << m.rules.size() << " rules\n";
    return kOk;
}

int cmd_render(const fs::path& model_path, const fs::path& content_dir, const fs::path& out_dir,
               const std::optional<fs::path>& context_path) {
    auto model_text = read_file(model_path);
    if (!model_text) {
        std::cerr << "error: cannot read " << model_path.string() << "\n";
        return kUsageError;
    }
    auto model = ecm::parse_model(*model_text);
    if (!model) {
        print_diagnostics(model_path, model.error());
        return kDomainError;
    }

    std::optional<ecm::PersonalizationContext> ctx;
    if (context_path) {
        auto ctx_text = read_file(*context_path);
        if (!ctx_text) {
            std::cerr << "error: cannot read " << context_path->string() << "\n";
            return kUsageError;
        }
        auto parsed = ecm::parse_context(*ctx_text);
        if (!parsed) {
            print_diagnostics(*context_path, parsed.error());
            return kDomainError;
        }
        ctx = std::move(parsed.value());
    }

    std::error_code ec;
    if (!fs::is_directory(content_dir, ec)) {
        std::cerr << "error: " << content_dir.string() << " is not a directory\n";
        return kUsageError;
    }
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        std::cerr << "error: cannot create output directory " << out_dir.string() << "\n";
        return kUsageError;
    }

    // lexicographic filename order, independent of filesystem order
    std::vector<fs::path> docs;
    for (const auto& entry : fs::directory_iterator(content_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".ecd")
            docs.push_back(entry.path());
    std::sort(docs.begin(), docs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    bool failed = false;
    for (const auto& doc_path : docs) {
        auto doc_text = read_file(doc_path);
        if (!doc_text) {
            std::cerr << "error: cannot read " << doc_path.string() << "\n";
            failed = true;
            continue;
        }
        auto doc = ecm::parse_document(*doc_text);
        if (!doc) {
            print_diagnostics(doc_path, doc.error());
            failed = true;
            continue;
        }
        auto bound = ecm::bind(doc.value(), model.value());
        if (!bound) {
            std::cerr << "error: " << doc_path.string() << ": "
                      << ecm::render_bind_error(bound.error()) << "\n";
            failed = true;
            continue;
        }
        ecm::DigitalObject object = std::move(bound.value());
        if (ctx) {
            auto personalized = ecm::apply_functional(object, model.value().rules, *ctx);
            if (personalized.suppressed) {
                std::cerr << "notice: " << doc_path.string() << ": skipped (suppressed)\n";
                continue;
            }
            const ecm::ClassDef* cls = model.value().find_class(object.class_name());
            if (!ecm::access_allowed(*ctx, cls->min_status)) {
                std::cerr << "notice: " << doc_path.string() << ": skipped (requires "
                          << ecm::status_name(cls->min_status) << ")\n";
                continue;
            }
            object = std::move(personalized.object);
        }
        auto page = ecm::render(object, model.value());
        if (!page) {
            std::cerr << "error: " << doc_path.string() << ": "
                      << ecm::render_render_error(page.error()) << "\n";
            failed = true;
            continue;
        }
        fs::path out_path = out_dir / (page.value().name + ".html");
        if (!write_file(out_path, page.value().markup)) {
            std::cerr << "error: cannot write " << out_path.string() << "\n";
            failed = true;
        }
    }
    return failed ? kDomainError : kOk;
}

int cmd_trace(const fs::path& program_path, const std::optional<fs::path>& input_path) {
    auto text = read_file(program_path);
    if (!text) {
        std::cerr << "error: cannot read " << program_path.string() << "\n";
        return kUsageError;
    }
    auto program = ecm::parse_program(*text);
    if (!program) {
        print_diagnostics(program_path, program.error());
        return kDomainError;
    }

    std::vector<ecm::Val> input;
    if (input_path) {
        auto input_text = read_file(*input_path);
        if (!input_text) {
            std::cerr << "error: cannot read " << input_path->string() << "\n";
            return kUsageError;
        }
        auto values = ecm::parse_input_values(*input_text);
        if (!values) {
            print_diagnostics(*input_path, values.error());
            return kDomainError;
        }
        input = std::move(values.value());
    }

    auto result = ecm::trace(program.value(), std::move(input));
    for (const auto& entry : result.entries) std::cout << ecm::render_trace_entry(entry) << "\n";
    if (result.error) {
        std::cout << ecm::render_machine_error(*result.error) << "\n";
        return kDomainError;
    }
    return kOk;
}

int cmd_schema(const fs::path& model_path, const fs::path& out_path) {
    auto text = read_file(model_path);
    if (!text) {
        std::cerr << "error: cannot read " << model_path.string() << "\n";
        return kUsageError;
    }
    auto model = ecm::parse_model(*text);
    if (!model) {
        print_diagnostics(model_path, model.error());
        return kDomainError;
    }
    auto relations = ecm::compile_schema(model.value());
    if (!relations) {
        std::cerr << "error: " << ecm::render_schema_error(relations.error()) << "\n";
        return kDomainError;
    }
    auto meta = ecm::compile_meta(model.value());
    for (auto& rel : meta) relations.value().push_back(std::move(rel));
    if (!write_file(out_path, ecm::emit_ddl(relations.value()))) {
        std::cerr << "error: cannot write " << out_path.string() << "\n";
        return kUsageError;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"enterprise content model toolkit"};
    app.require_subcommand(1);

    std::string validate_model;
    auto* validate = app.add_subcommand("validate", "parse a model and report its inventory");
    validate->add_option("model", validate_model, "model file (.ecm)")->required();

    std::string render_model_path, render_content, render_out, render_context;
    auto* render = app.add_subcommand("render", "bind documents and write pages");
    render->add_option("--model", render_model_path, "model file (.ecm)")->required();
    render->add_option("--content", render_content, "directory of .ecd documents")->required();
    render->add_option("--out", render_out, "output directory for pages")->required();
    render->add_option("--context", render_context, "personalization context (.ctx)");

    std::string trace_program, trace_input;
    auto* trace = app.add_subcommand("trace", "execute a machine program and print its trace");
    trace->add_option("--program", trace_program, "program file (.amc)")->required();
    trace->add_option("--input", trace_input, "input values, one literal per line");

    std::string schema_model, schema_out;
    auto* schema = app.add_subcommand("schema", "compile a model into relational DDL");
    schema->add_option("--model", schema_model, "model file (.ecm)")->required();
    schema->add_option("--out", schema_out, "output DDL file (.sql)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsageError;
    }

    if (validate->parsed()) return cmd_validate(validate_model);
    if (render->parsed())
        return cmd_render(render_model_path, render_content, render_out,
                          render_context.empty() ? std::nullopt
                                                 : std::optional<fs::path>(render_context));
    if (trace->parsed())
        return cmd_trace(trace_program, trace_input.empty() ? std::nullopt
                                                            : std::optional<fs::path>(trace_input));
    if (schema->parsed()) return cmd_schema(schema_model, schema_out);
    return kUsageError;
}
