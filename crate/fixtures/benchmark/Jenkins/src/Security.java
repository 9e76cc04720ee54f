package hudson.security;

public class Security {

    private Authorizer authorizer;

    boolean hasPermission(User user, String permission) {
        return authorizer.check(user.getName().trim(), permission);
    }

    static boolean isAdmin(String role) {
        return role.equals("admin");
    }

    static int failedLogins(int attempts, int limit) {
        int remaining = limit - attempts;
        if (remaining < 0) {
            remaining = 0;
        }
        return remaining;
    }

    static String token(String user, int nonce) {
        String prefix = user.concat(":");
        String t = prefix + nonce;
        return t;
    }

    static int level(String role) {
        int l;
        switch (role) {
            case "admin":
                l = 3;
                break;
            case "user":
                l = 1;
                break;
            default:
                l = 0;
                break;
        }
        return l;
    }
}
