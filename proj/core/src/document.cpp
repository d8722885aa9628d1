#include "factorlab/document.hpp"

#include <rapidjson/document.h>
#include <rapidjson/error/en.h>
#include <rapidjson/schema.h>
#include <rapidjson/stringbuffer.h>
#include <rapidjson/writer.h>

namespace factorlab::io {

const std::string& input_schema()
{
    static const std::string text =
#include "input_schema.inc"
        ;
    return text;
}

namespace {

const rapidjson::SchemaDocument& compiled_schema()
{
    static const rapidjson::SchemaDocument schema = [] {
        rapidjson::Document d;
        d.Parse(input_schema().c_str());
        if (d.HasParseError())
            throw std::logic_error("embedded input schema does not parse");
        return rapidjson::SchemaDocument(d);
    }();
    return schema;
}

std::string pointer_string(const rapidjson::Pointer& p)
{
    rapidjson::StringBuffer sb;
    p.StringifyUriFragment(sb);
    std::string s = sb.GetString();
    return s == "#" ? "document root" : s;
}

} // namespace

void validate(const json& doc)
{
    rapidjson::Document d;
    const std::string text = doc.dump();
    d.Parse(text.c_str());
    rapidjson::SchemaValidator v(compiled_schema());
    if (d.Accept(v))
        return;
    throw InputError("schema violation at " + pointer_string(v.GetInvalidDocumentPointer()) + " (keyword '" +
                     v.GetInvalidSchemaKeyword() + "')");
}

json parse_document(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    validate(doc);
    return doc;
}

QSetting QSetting::resolve(const json& doc, const std::optional<std::string>& flag)
{
    std::optional<std::string> text = flag;
    if (!text && doc.contains("q"))
        text = doc.at("q").get<std::string>();
    QSetting s;
    if (!text)
        return s;
    if (*text == "formal") {
        s.formal = true;
        return s;
    }
    try {
        s.value = Rational::parse(*text);
    } catch (const std::exception& e) {
        throw InputError("q must be 'formal' or a rational number, got \"" + *text + "\"");
    }
    return s;
}

} // namespace factorlab::io
