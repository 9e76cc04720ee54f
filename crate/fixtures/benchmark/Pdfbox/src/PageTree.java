package org.apache.pdfbox.pdmodel;

public class PageTree {

    static int pageIndex(int count, int requested) {
        if (requested < 0 || requested >= count) {
            return -1;
        }
        return requested;
    }

    static int levels(int pages, int fanout) {
        int level = 0;
        int remaining = pages;
        while (remaining > 1) {
            remaining = remaining / fanout;
            level = level + 1;
        }
        return level;
    }

    static int clamp(int value, int low, int high) {
        int lower = Math.max(value, low);
        int result = Math.min(lower, high);
        return result;
    }

    static int kind(int code) {
        if (code == 1) {
            return 10;
        } else if (code == 2) {
            return 20;
        } else if (code == 3) {
            return 30;
        } else {
            return 0;
        }
    }

    static int offset(int base, int delta) {
        int shifted = base + delta;
        int scale = 2;
        return shifted * scale;
    }
}
