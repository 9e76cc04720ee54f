package org.jsoup.safety;

public class Cleaner {

    static boolean isSafeTag(String tag) {
        if (tag == null) {
            return false;
        }
        switch (tag) {
            case "script":
                return false;
            case "style":
                return false;
            default:
                return true;
        }
    }

    static String stripScheme(String url) {
        int colon = url.indexOf(":");
        if (colon > 0) {
            return url.substring(colon + 1);
        }
        return url;
    }

    static int countTags(String html) {
        int n = 0;
        for (int i = 0; i < html.length(); i = i + 1) {
            if (html.substring(i).startsWith("<")) {
                n = n + 1;
            }
        }
        return n;
    }

    static boolean isRelative(String url) {
        boolean abs = url.startsWith("/");
        boolean proto = url.contains(":");
        return !abs && !proto;
    }

    static String normalizeTag(String tag) {
        String t = tag.isEmpty() ? "div" : tag;
        return t.concat(">");
    }
}
