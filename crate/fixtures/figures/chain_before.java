public class BeanSerializer {

    public boolean handles(Object value, Class expectedType) {
        if (value == null) {
            return false;
        }
        return value.getClass().equals(expectedType);
    }
}
