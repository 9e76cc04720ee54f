package com.thoughtworks.xstream.converters;

import com.thoughtworks.xstream.mapper.AliasMap;

public class Converter {

    private AliasMap aliases;
    private Class supported;

    boolean canConvert(Object value) {
        return value.getClass().equals(supported);
    }

    String alias(String name) {
        String found = aliases.lookup(name);
        if (found != null) {
            return found;
        }
        return name;
    }

    static String escape(String text) {
        if (text.contains("&")) {
            return "&amp;";
        }
        return text;
    }

    static int nesting(int depth, int max) {
        int allowed = max - depth;
        int result = allowed > 0 ? allowed : 0;
        return result;
    }

    static boolean isBlacklisted(String type) {
        boolean proxy = type.startsWith("java.lang.reflect");
        boolean process = type.equals("java.lang.ProcessBuilder");
        return proxy || process;
    }
}
