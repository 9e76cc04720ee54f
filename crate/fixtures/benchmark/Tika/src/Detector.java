package org.apache.tika.detect;

public class Detector {

    static String mediaType(String ext) {
        if (ext.equals("xml")) {
            return "application/xml";
        } else if (ext.equals("html")) {
            return "text/html";
        } else if (ext.equals("txt")) {
            return "text/plain";
        }
        return "application/octet-stream";
    }

    static int headerLength(int declared, int available) {
        int len = declared;
        if (len > available) {
            len = available;
        }
        return len;
    }

    static boolean looksLikeXml(String head) {
        boolean decl = head.startsWith("<?xml");
        boolean tag = head.startsWith("<");
        return decl || tag;
    }

    static int entityDepth(int depth) {
        int d = 0;
        while (d < depth && d < 20) {
            d = d + 1;
        }
        return d;
    }

    static String suffix(String name, boolean upper) {
        String base = name.isEmpty() ? "unknown" : name;
        if (upper) {
            return base.concat(".BIN");
        }
        return base.concat(".bin");
    }
}
